"""Exact analysis of digit-restricted base-s Cantor sets.

The library splits into: the digit/block codec (`sadic`), exact
cylinder-interval algebra (`cylinders`), sets generated by finite word
alphabets (`combos`), dimension equations and box counting
(`dimension`), stage-wise covering measure (`measure`), digit-frequency
statistics (`normality`), and the end-to-end acceptance rows
(`acceptance`).  Everything numeric is an exact `fractions.Fraction`
unless a result is a dimension (a root of a transcendental equation).
"""

from .errors import (
    ExtremaFalsificationError,
    InsufficientDigitsError,
    InvalidBaseError,
    InvalidBlockError,
    InvalidDigitError,
    NotAMemberError,
    RangeError,
    ResourceBudgetError,
    SadicError,
    ScaleMismatchError,
    WordError,
)
from .sadic import (
    BlockSequence,
    DigitString,
    Rational,
    block_decode,
    block_encode,
    digits_to_rational,
    element_value,
    rational_from_json,
    rational_json,
    rational_to_digits,
)
from .cylinders import (
    Cylinder,
    GapInterval,
    LocateResult,
    block_alphabet,
    children,
    cylinder,
    cylinder_diameter,
    cylinder_endpoints,
    cylinder_order,
    extension_value_bounds,
    gap_interval,
    point_locate,
    set_extrema,
)
from .combos import (
    ComboAlphabet,
    ComboCylinder,
    ComboExtrema,
    audit_extrema,
    combo_cylinder,
    comboset_extrema,
    enumerate_prefixes,
    induced_alphabet,
    parse_word,
    sprime3_alphabet,
    tilde_alphabet,
    word_str,
)
from .dimension import (
    BoxCountResult,
    DimensionResult,
    MoranEquation,
    box_count_estimate,
    box_count_for_alphabet,
    dim_S,
    dim_alphabet,
    dim_tilde,
    moran_solve,
)
from .measure import (
    DEFAULT_BIT_BUDGET,
    CoverStage,
    cover_stage,
    measure_decay_report,
    sigma,
)
from .normality import (
    FrequencyProfile,
    NormalVerdict,
    ResidualReport,
    digit_frequencies,
    normal_candidate_exists,
    normality_dimension_bounds,
    structural_identity_residual,
    structural_zero_frequency,
    uniform_stream_zero_frequency,
)
from .acceptance import CRITERIA, CriterionResult, format_table, run_all

__version__ = "0.1.0"

__all__ = [
    "BlockSequence",
    "BoxCountResult",
    "CRITERIA",
    "ComboAlphabet",
    "ComboCylinder",
    "ComboExtrema",
    "CoverStage",
    "CriterionResult",
    "Cylinder",
    "DEFAULT_BIT_BUDGET",
    "DigitString",
    "DimensionResult",
    "ExtremaFalsificationError",
    "FrequencyProfile",
    "GapInterval",
    "InsufficientDigitsError",
    "InvalidBaseError",
    "InvalidBlockError",
    "InvalidDigitError",
    "LocateResult",
    "MoranEquation",
    "NormalVerdict",
    "NotAMemberError",
    "RangeError",
    "Rational",
    "ResidualReport",
    "ResourceBudgetError",
    "SadicError",
    "ScaleMismatchError",
    "WordError",
    "audit_extrema",
    "block_alphabet",
    "block_decode",
    "block_encode",
    "box_count_estimate",
    "box_count_for_alphabet",
    "children",
    "combo_cylinder",
    "comboset_extrema",
    "cover_stage",
    "cylinder",
    "cylinder_diameter",
    "cylinder_endpoints",
    "cylinder_order",
    "digit_frequencies",
    "digits_to_rational",
    "dim_S",
    "dim_alphabet",
    "dim_tilde",
    "element_value",
    "enumerate_prefixes",
    "extension_value_bounds",
    "format_table",
    "gap_interval",
    "induced_alphabet",
    "measure_decay_report",
    "moran_solve",
    "normal_candidate_exists",
    "normality_dimension_bounds",
    "parse_word",
    "point_locate",
    "rational_from_json",
    "rational_json",
    "rational_to_digits",
    "run_all",
    "set_extrema",
    "sigma",
    "sprime3_alphabet",
    "structural_identity_residual",
    "structural_zero_frequency",
    "tilde_alphabet",
    "uniform_stream_zero_frequency",
    "word_str",
]
