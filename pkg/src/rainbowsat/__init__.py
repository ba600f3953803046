"""Verification engine for proper rainbow saturation of cycles."""

__version__ = "0.1.0"
