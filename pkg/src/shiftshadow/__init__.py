"""Subshift presentations, mixing/quasi-finite-type certificates, and
shadow-set constructions, with an HTTP service and a thin CLI on top."""

from .core import (
    Agreement,
    Alphabet,
    AlphabetMismatchError,
    PseudoOrbit,
    PseudoOrbitViolation,
    Window,
    Word,
    agree_within,
    agreement_radius,
    check_pseudo_orbit,
    make_alphabet,
    shift_window,
    trace,
)
from .mixing import (
    MixingCertificate,
    NonmixingWitness,
    QftCertificate,
    find_nonmixing_witness,
    is_nonmixing_pair,
    primitivity_exponent,
    qft_number_search,
    verify_mixing_number,
    verify_qft_number,
)
from .presentations import (
    EmptyShiftError,
    LabeledGraph,
    ShiftPresentation,
    WordNotAllowedError,
    essentialize,
    presentation_from_definition,
    sft_from_forbidden,
    sofic_from_graph,
)
from .shadowing import (
    BlockParams,
    BridgeNotFoundError,
    BudgetExceededError,
    ShadowCertificate,
    ShadowPair,
    ShadowSearchResult,
    construct_pair_mixing,
    construct_pair_mixing_forward,
    construct_pair_qft,
    construct_pair_schedule,
    extended_trace,
    make_spliced_pseudo_orbit,
    random_pseudo_orbit,
    search_shadow_sets,
    specification_schedule,
    verify_shadow_set,
)

__version__ = "0.1.0"
