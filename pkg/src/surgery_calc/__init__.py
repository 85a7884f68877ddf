"""Exact invariant calculator for symplectic fiber sums and Luttinger surgery."""

from .fpgroup import Presentation, classify_group, todd_coxeter, tietze_simplify
from .lattice import IntLattice, classify_form, standard_form
from .blocks import ManifoldModel, elliptic_surface, product, rational_surface, surface
from .surgery import GluingMap, LuttingerSpec, cy_check, fiber_sum_4, fiber_sum_6, luttinger
from .script import parse_script, format_script
from .runner import run_script
from .report import emit_report

__version__ = "0.1.0"
