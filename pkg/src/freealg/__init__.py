"""Exact computations in free associative and free Lie algebras.

Subpackages and modules:

* ``exactalg``: exact fields, noncommutative polynomials, capped series, echelon forms.
* ``weakalg``: right dependence in the free algebra and in capped power series.
* ``freelie``: Lie elements, brackets, Lyndon bases and Lie templates.
* ``liedep``: expressing Lie elements as Lie polynomials in a family.
* ``limgen``: window models of limits, free generating sets, graded automorphisms.
* ``cli``: parser and certificate-emitting command line.
"""

from .exactalg import GF, QQ, Field, NcPoly, WindowSeries
from .freelie import LiePoly, LieTemplate, bracket, is_lie_element, lyndon_basis
from .liedep import express_as_lie, lie_dependence, lie_family_dependent
from .limgen import (
    GradedPresentation,
    Window,
    assoc_free_generators,
    bounded_membership,
    build_graded_automorphism,
    check_compatible,
    lie_free_generators,
    min_topdegree_of_nonzero_images,
    monomial_span_check,
    no_right_dependence_check,
    project,
    relatively_free_check,
)
from .weakalg import family_dependent, right_reduce, series_family_dependent, series_invert, series_reduce

__version__ = "0.1.0"
