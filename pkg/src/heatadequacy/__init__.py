"""Generation adequacy assessment under electrified heat demand."""

__version__ = "0.1.0"
