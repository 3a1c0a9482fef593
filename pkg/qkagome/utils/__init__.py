from .serialize import *

__all__ = ["to_plain", "dumps", "write_json", "read_json"]
