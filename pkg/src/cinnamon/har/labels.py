"""Re-export of the activity enumeration for the HAR public surface."""

from ..labels import LABEL_ORDER, ActivityLabel

__all__ = ["ActivityLabel", "LABEL_ORDER"]
