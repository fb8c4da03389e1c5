"""Phase labels of the generalized cluster model from a versioned boundary file."""

import hashlib
import json
import logging
from pathlib import Path
from typing import Optional, Sequence, Tuple

from pydantic import ValidationError

from .config import get_config_loader, load_user_config
from .exceptions import ConfigurationError, OutsideDomainError
from .models.cluster import PhaseBoundarySpec

logger = logging.getLogger(__name__)

_EDGE_EPS = 1e-12


def _spec_hash(document: dict) -> str:
    canonical = json.dumps(document, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def load_phase_boundaries(path: Optional[Path] = None) -> PhaseBoundarySpec:
    """Parse a boundary file (the shipped one by default).

    Raises:
        ConfigurationError: If the file is missing or does not describe regions
    """
    document = load_user_config(path) if path is not None else get_config_loader().load_phase_boundaries()
    try:
        spec = PhaseBoundarySpec.model_validate({**document, "spec_hash": _spec_hash(document)})
    except ValidationError as e:
        raise ConfigurationError(
            "Invalid phase boundary file",
            {"error": str(e), "file": str(path) if path else "shipped default"}
        )
    for axis in ("j1", "j2"):
        if axis not in spec.domain:
            raise ConfigurationError(
                "Phase boundary domain must bound j1 and j2",
                {"missing_axis": axis}
            )
    logger.debug("Loaded %d phase regions (hash %s)", len(spec.regions), spec.spec_hash)
    return spec


def _on_edge(x: float, y: float, a: Tuple[float, float], b: Tuple[float, float]) -> bool:
    (ax, ay), (bx, by) = a, b
    cross = (bx - ax) * (y - ay) - (by - ay) * (x - ax)
    if abs(cross) > _EDGE_EPS * max(1.0, abs(bx - ax) + abs(by - ay)):
        return False
    return (min(ax, bx) - _EDGE_EPS <= x <= max(ax, bx) + _EDGE_EPS
            and min(ay, by) - _EDGE_EPS <= y <= max(ay, by) + _EDGE_EPS)


def polygon_contains(polygon: Sequence[Tuple[float, float]], x: float, y: float) -> bool:
    """Closed point-in-polygon test (edges and vertices count as inside)."""
    count = len(polygon)
    inside = False
    for i in range(count):
        a = polygon[i]
        b = polygon[(i + 1) % count]
        if _on_edge(x, y, a, b):
            return True
        (xi, yi), (xj, yj) = a, b
        if (yi > y) != (yj > y):
            x_cross = xi + (y - yi) * (xj - xi) / (yj - yi)
            if x < x_cross:
                inside = not inside
    return inside


def phase_label(j1: float, j2: float, spec: PhaseBoundarySpec) -> int:
    """Class of the first region (in file order) containing (j1, j2).

    Raises:
        OutsideDomainError: If the point is outside the domain or no region claims it
    """
    (lo1, hi1), (lo2, hi2) = spec.domain["j1"], spec.domain["j2"]
    if not (lo1 - _EDGE_EPS <= j1 <= hi1 + _EDGE_EPS and lo2 - _EDGE_EPS <= j2 <= hi2 + _EDGE_EPS):
        raise OutsideDomainError(j1, j2)
    for region in spec.regions:
        if polygon_contains(region.polygon, j1, j2):
            return region.class_index
    raise OutsideDomainError(j1, j2)
