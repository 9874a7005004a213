"""MiniOO: a small object-oriented source language and its model extractor."""

from .extract import extract, extract_lazy_inherited
from .parser import parse

__all__ = ["parse", "extract", "extract_lazy_inherited"]
