__all__ = [
    "PentagonData",
    "SquareData",
    "PantsSurface",
    "HairyTorusModel",
    "YSurfaceModel",
    "CertificateReport",
    "CheckResult",
    "collar_width",
    "epsilon0",
    "pants_cuff_distance",
    "solve_pentagon",
    "square_data",
    "net_point",
    "build_hairy_torus",
    "hairy_torus_report",
    "bers_sweep",
    "build_y_surface",
    "verify_systole_certificate",
    "y_genus",
    "SURFACE_FACTORY",
]

from .hypgeom import (
    PentagonData,
    SquareData,
    collar_width,
    epsilon0,
    pants_cuff_distance,
    solve_pentagon,
    square_data,
)
from .surfaces import (
    CertificateReport,
    CheckResult,
    HairyTorusModel,
    PantsSurface,
    YSurfaceModel,
    bers_sweep,
    build_hairy_torus,
    build_y_surface,
    hairy_torus_report,
    net_point,
    verify_systole_certificate,
    y_genus,
)

SURFACE_FACTORY = {
    "net_point": net_point,
    "hairy_torus": build_hairy_torus,
    "y_surface": build_y_surface,
}
