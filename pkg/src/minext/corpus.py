"""The default test corpus, as catalog spec strings.

Instance ids are the catalog strings themselves, which keeps reports readable
and lets worker processes rebuild instances from the id alone.
"""
from __future__ import annotations

MINIMAL_RRNGS = [
    # fields over themselves, with and without product
    "regular_rrng(gf(2))",
    "zero_bimodule(gf(2),0)",
    "regular_rrng(gf(3))",
    "zero_bimodule(gf(3),0)",
    "regular_rrng(gf(4))",
    "zero_bimodule(gf(4),0)",
    "twisted_field(4,1)",
    "regular_rrng(gf(5))",
    "regular_rrng(gf(8))",
    "twisted_field(8,1)",
    "twisted_field(8,2)",
    "regular_rrng(gf(9))",
    "twisted_field(9,1)",
    # integers mod prime powers
    "ideal_as_rrng(zmod(4),2)",
    "quotient_rrng(zmod(4),2)",
    "zero_bimodule(zmod(4),2)",
    "zero_bimodule(zmod(9),3)",
    "quotient_rrng(zmod(8),2)",
    # the 2x2 matrix ring
    "regular_rrng(mat(2,2))",
    "zero_bimodule(mat(2,2),0)",
    # a product of fields (not prime, semiprime)
    "quotient_rrng(product(gf(2),gf(2)),1)",
    "zero_bimodule(product(gf(2),gf(2)),1)",
    "ideal_as_rrng(product(gf(2),gf(2)),2)",
    "quotient_rrng(product(gf(2),gf(3)),1)",
    # upper triangular (not semiprime)
    "quotient_rrng(tri(2,2),1)",
    "quotient_rrng(tri(2,2),4)",
    "ideal_as_rrng(tri(2,2),2)",
    "zero_bimodule(tri(2,2),1)",
]

# heavier instances left out when a suite is run with a small --max-order
LARGE_ORDER = {"regular_rrng(mat(2,2))": 256, "zero_bimodule(mat(2,2),0)": 256}

NON_MINIMAL_RRNGS = [
    "as_rrng(prime_subfield(4))",
    "as_rrng(prime_subfield(8))",
    "as_rrng(diagonal(gf(2)))",
    "regular_rrng(zmod(4))",
    "regular_rrng(zmod(8))",
    "regular_rrng(tri(2,2))",
    "regular_rrng(product(gf(2),gf(2)))",
    "ideal_as_rrng(zmod(8),2)",
]

# minimal extensions whose base is a prime ring
PRIME_BASE_EXTENSIONS = [
    "prime_subfield(4)",
    "prime_subfield(8)",
    "prime_subfield(9)",
    "regular_embed(4)",
    "regular_embed(9)",
    "diagonal(gf(2))",
    "diagonal(gf(3))",
    "diagonal(gf(4))",
    "ideal_extension(regular_rrng(gf(2)))",
    "ideal_extension(zero_bimodule(gf(2),0))",
    "ideal_extension(regular_rrng(gf(3)))",
    "ideal_extension(zero_bimodule(gf(3),0))",
    "ideal_extension(zero_bimodule(gf(4),0))",
    "ideal_extension(twisted_field(4,1))",
    "ideal_extension(twisted_field(8,1))",
    "ideal_extension(twisted_field(9,1))",
    "ideal_extension(regular_rrng(mat(2,2)))",
    "ideal_extension(zero_bimodule(mat(2,2),0))",
]

# minimal extensions whose base is not prime
OTHER_EXTENSIONS = [
    "tri_in_mat(2,2)",
    "ideal_extension(ideal_as_rrng(zmod(4),2))",
    "ideal_extension(quotient_rrng(zmod(4),2))",
    "ideal_extension(quotient_rrng(tri(2,2),1))",
    "ideal_extension(ideal_as_rrng(tri(2,2),2))",
    "ideal_extension(quotient_rrng(product(gf(2),gf(2)),1))",
]

RINGS = [
    "gf(2)", "gf(4)", "gf(9)", "zmod(4)", "zmod(9)", "mat(2,2)", "mat(2,3)", "tri(2,2)",
    "product(gf(2),gf(2))", "product(gf(2),gf(3))", "product(mat(2,2),gf(2))",
]


def order_of(spec: str) -> int:
    from .catalog import make
    from .extensions import IdealExtension
    from .substructure import EmbeddedSubring

    obj = make(spec)
    if isinstance(obj, IdealExtension):
        return obj.E.n
    if isinstance(obj, EmbeddedSubring):
        return obj.big.n
    if hasattr(obj, "R") and hasattr(obj, "I"):
        return obj.R.n * obj.I.n
    return obj.n


def select(specs, max_order: int | None = None) -> list[str]:
    if max_order is None:
        return list(specs)
    return [s for s in specs if order_of(s) <= max_order]
