from .config import *

__all__ = ["RunConfig", "parse_family"]
