"""Exact checks for Coble surfaces, their Coxeter-Dynkin graphs and conductrices."""

__version__ = "0.1.0"

from .fixtures import load_registry

__all__ = ["load_registry", "__version__"]
