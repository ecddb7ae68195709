"""Shadow state sums and torus-gauge Chern-Simons state sums for colored links."""

from .liealg import AlgebraSpec, RootSystem, build_root_system
from .modular import ModularData, build_modular_data
from .shadowlink import ColoredLink, Shadow, derive_shadow, parse_link

__all__ = [
    "AlgebraSpec",
    "RootSystem",
    "build_root_system",
    "ModularData",
    "build_modular_data",
    "ColoredLink",
    "Shadow",
    "derive_shadow",
    "parse_link",
]
__version__ = "0.1.0"
