"""Tone-aware multilingual chatbot engine for exam-stress support."""

__version__ = "0.1.0"
