"""
title : types.py
create : @tarickali 23/12/26
update : @tarickali 26/10/17
"""

__all__ = ["Number", "Complex", "Coords"]

Number = int | float | complex
Complex = complex
Coords = tuple[int, int]
