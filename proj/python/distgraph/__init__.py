"""Distance-graph forms on Z^d: counting, evaluation, sweeps, exponent regions."""

from fractions import Fraction

from . import _distgraph
from ._distgraph import (
    AdmissibilityError,
    CapacityError,
    ValidationError,
    ZeroForm,
    __version__,
    admissible,
    catalog_names,
    count,
    counterexample,
    cross_validate,
    evaluate,
    fit,
    fit_csv,
    graph_edges,
    probe,
    run_cli,
    sphere,
    sphere_cardinality,
    sweep,
)


def _frac(s):
    return Fraction(s)


def _strs(point):
    return [f"{Fraction(x).numerator}/{Fraction(x).denominator}" for x in point]


def hull_membership(graph, d, point):
    """'interior', 'boundary' or 'outside' for a point of Holder reciprocals."""
    return _distgraph.hull_membership(graph, d, _strs(point))


def classify(name, d, point, k=2):
    return _distgraph.classify(name, d, _strs(point), k)


def region_vertices(graph, d):
    return [tuple(_frac(x) for x in v) for v in _distgraph.region_vertices(graph, d)]


def conjectured_exponent(d, point):
    return _frac(_distgraph.conjectured_exponent(d, _strs(point)))


def interpolated_exponent(d, theta, inv_p, inv_q):
    a, b, c = _strs([theta, inv_p, inv_q])
    return _frac(_distgraph.interpolated_exponent(d, a, b, c))


def main(argv=None):
    import sys

    code, out, err = run_cli(list(sys.argv[1:] if argv is None else argv))
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code
