"""Resettable zero-knowledge arguments in the bare public-key model,
with the adversarial machinery (resets, concurrent scheduling, rewinding
extraction, one-many simulation) implemented at desk scale."""

__version__ = "0.1.0"
