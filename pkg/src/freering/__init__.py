"""Exact computation in group algebras of free groups over the rationals."""
from .errors import (
    AmbiguityError,
    DecodeError,
    FreeRingError,
    IndeterminateDivision,
    InvalidLetter,
    NotInKP,
    ParseError,
    PreconditionError,
    RankMismatch,
)
from .words import Word, abelianize, ball, cyclic_reduce, primitive_root, reduce, sphere
from .magnus import OrderVerdict, PowerSeries, bergman_cmp, bergman_sorted, embed_word, ps_cmp, ps_inv
from .groupring import (
    FactoredElem,
    GroupRingElem,
    IrreducibilityCertificate,
    augmentation,
    brute_inverse_search,
    centralizer_root,
    divide_exact,
    field_unit_predicate,
    gr_mul,
    irreducibility_certificate,
    is_trivial_unit,
    rigidity_certificate,
    specialize_abelian,
    specialize_powers,
)
from .laurent import (
    LaurentPoly,
    TupleCode,
    binomial_irreducible,
    divides_exact,
    in_K_g,
    in_KP,
    nu_transport,
    powers_predicate,
    psi_check,
    tuple_decode,
    tuple_encode,
)
from .codec import (
    FqCode,
    MarkerFamily,
    WordCode,
    a_block,
    am_chain,
    am_chain_verify,
    check_fq,
    decode_fq_small,
    decode_word,
    encode_word,
    markers,
    pack_element,
    pack_fq,
)
from .geometry import (
    CoreGraph,
    ProbeResult,
    fold,
    geodesic,
    is_free_basis,
    malnormality_probe,
    member,
    quasiconvexity_probe,
    word_metric,
)
from .expr import parse_elem, parse_expr

__all__ = [
    "a_block",
    "abelianize",
    "am_chain",
    "am_chain_verify",
    "AmbiguityError",
    "augmentation",
    "ball",
    "bergman_cmp",
    "bergman_sorted",
    "binomial_irreducible",
    "brute_inverse_search",
    "centralizer_root",
    "check_fq",
    "CoreGraph",
    "cyclic_reduce",
    "decode_fq_small",
    "decode_word",
    "DecodeError",
    "divide_exact",
    "divides_exact",
    "embed_word",
    "encode_word",
    "FactoredElem",
    "field_unit_predicate",
    "fold",
    "FqCode",
    "FreeRingError",
    "geodesic",
    "gr_mul",
    "GroupRingElem",
    "in_K_g",
    "in_KP",
    "IndeterminateDivision",
    "InvalidLetter",
    "irreducibility_certificate",
    "IrreducibilityCertificate",
    "is_free_basis",
    "is_trivial_unit",
    "LaurentPoly",
    "malnormality_probe",
    "MarkerFamily",
    "markers",
    "member",
    "NotInKP",
    "nu_transport",
    "OrderVerdict",
    "pack_element",
    "pack_fq",
    "parse_elem",
    "parse_expr",
    "ParseError",
    "powers_predicate",
    "PowerSeries",
    "PreconditionError",
    "primitive_root",
    "ProbeResult",
    "ps_cmp",
    "ps_inv",
    "psi_check",
    "quasiconvexity_probe",
    "RankMismatch",
    "reduce",
    "rigidity_certificate",
    "specialize_abelian",
    "specialize_powers",
    "sphere",
    "tuple_decode",
    "tuple_encode",
    "TupleCode",
    "Word",
    "word_metric",
    "WordCode",
]

__version__ = "0.1.0"
