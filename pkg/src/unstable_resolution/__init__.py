"""GF(2) computations with Steinberg modules, Brown-Gitler modules and their injective resolutions."""

from __future__ import annotations

__version__ = "0.1.0"
