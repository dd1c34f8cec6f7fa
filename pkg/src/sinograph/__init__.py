"""Graphical-structure toolkit for sinographs.

Builds a directed graph of subcharacter inclusions over allographic
classes from stroke geometry, weights its edges with phonetic and
semantic relatedness, and uses weighted chains of subcharacters to
augment character-level feature vectors for text classification and to
approximate the meaning of unannotated characters.
"""

__version__ = "0.1.0"

from .errors import DataError, InputError

__all__ = ["DataError", "InputError", "__version__"]
