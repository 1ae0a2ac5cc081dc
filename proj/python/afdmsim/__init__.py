"""AFDM transceiver simulator with grouped pre-chirp selection."""

from ._afdmsim import *  # noqa: F401,F403

__version__ = "0.1.0"
