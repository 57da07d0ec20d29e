"""Utility helpers: logging, stable I/O, hashing and sampling."""
