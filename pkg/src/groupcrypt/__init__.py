"""Group-based cryptography: graph groups, polycyclic platforms, protocols and retract FHE."""

__version__ = "0.1.0"
