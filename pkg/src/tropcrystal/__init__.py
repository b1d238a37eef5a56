"""Perfect crystals B^{2,l}, the A_n^(1) geometric crystal on W(varpi_2),
and its ultra-discretization, all in exact arithmetic."""

from tropcrystal.errors import InvalidRank, MissingBinding, ResourceCap, SingularPoint

__all__ = ["InvalidRank", "MissingBinding", "ResourceCap", "SingularPoint"]
__version__ = "0.1.0"
