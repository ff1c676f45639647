"""Exact finite-dimensional Choquet theory for function spaces on finite sets."""
from .core import (FunctionSpace, Gaussian, Measure, Status, Verdict, load_space,
                   save_space, total_variation, integrate)

__version__ = "0.1.0"

__all__ = ["FunctionSpace", "Gaussian", "Measure", "Status", "Verdict", "integrate",
           "load_space", "save_space", "total_variation"]
