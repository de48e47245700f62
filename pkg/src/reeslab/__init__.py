"""reeslab: exact computation with Rees algebras, Hilbert data, Betti tables and diagonal subalgebras."""

__version__ = "0.1.0"

from .rings import (
    DEGLEX,
    DEGREVLEX,
    LEX,
    PrimeField,
    QQ,
    ParseError,
    Polynomial,
    RingError,
    RingSpec,
    TermOrder,
    blowup_ring,
    elimination_order,
    format_polynomial,
    graded_ring,
    multidegree_of,
    parse_polynomial,
)
from .groebner import (
    GroebnerBasis,
    Ideal,
    colon_ideal,
    eliminate,
    groebner_basis,
    ideal_power,
    ideal_product,
    initial_ideal,
    minimal_generators,
    normal_form,
)
from .hilbert import (
    BigradedHilbertPolynomial,
    DimMultReport,
    HilbertPolynomial,
    HilbertSeriesRational,
    SeriesError,
    bigraded_hilbert_polynomial,
    dim_mult,
    hilbert_function,
    hilbert_polynomial,
    hilbert_series_ideal,
    hilbert_series_monomial,
    hilbert_series_ring,
)

__all__ = [name for name in dir() if not name.startswith("_")]
