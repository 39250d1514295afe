"""Thermodynamic length with the Helmholtz potential metric for virial gases."""
from .eos import StatePoint, VirialEos
from .length import (LengthReport, PathSpec, isotherm_length_closed,
                     isotherm_length_quadrature, isotherm_length_theorem, path_length)
from .metric import Character, MetricAtPoint, Signature, assemble, classify_vector
from .quad import QuadratureConfig, integrate
from .response import CvModel, ResponseSet, from_eos

__version__ = "0.1.0"
