"""dmlab: a finite-algebra workbench for semilinear Dunn and De Morgan monoids."""

__version__ = "0.1.0"
