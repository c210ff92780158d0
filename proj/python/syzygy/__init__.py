"""Exact Koszul cohomology and graded Betti numbers of parameterized varieties."""

from ._core import (
    betti,
    check_np,
    euler_finisher,
    folk,
    gamma_kernel_dims,
    hermite,
    koszul_group,
    koszul_module,
    rank,
    wahl_certificate,
    wedge2_decompose,
    __version__,
)

__all__ = [
    "betti",
    "check_np",
    "euler_finisher",
    "folk",
    "gamma_kernel_dims",
    "hermite",
    "koszul_group",
    "koszul_module",
    "rank",
    "wahl_certificate",
    "wedge2_decompose",
    "__version__",
]
