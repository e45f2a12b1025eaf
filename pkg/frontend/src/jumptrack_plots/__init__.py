"""Figure generation from jumptrack CLI CSV outputs.

This layer never recomputes physics: it reads the trajectory and
entropy-curve CSV schemas emitted by the `jumptrack` CLI and renders them.
"""

__version__ = "0.1.0"

from .bloch import render_bloch
from .entropy import render_entropy
from .io import SchemaError

__all__ = ["render_bloch", "render_entropy", "SchemaError", "__version__"]
