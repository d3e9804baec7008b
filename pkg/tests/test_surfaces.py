import dataclasses
import math

import pytest

from systolic_atlas.exceptions import GirthError, ParamError, ParityError
from systolic_atlas.geometry import (
    SURFACE_FACTORY,
    HairyTorusModel,
    PantsSurface,
    YSurfaceModel,
    bers_sweep,
    build_hairy_torus,
    build_y_surface,
    epsilon0,
    hairy_torus_report,
    net_point,
    solve_pentagon,
    verify_systole_certificate,
    y_genus,
)
from systolic_atlas.geometry.hypgeom import PentagonData
from systolic_atlas.geometry.surfaces import (
    ARC_TYPES,
    CUFF_TOLERANCE,
    ClosedComplex,
    complementary_regions,
    crossing_curve_bound,
    filling_certificate,
    glue_template,
    grid_torus_complex,
    piece_template,
    template_skeleton,
)
from systolic_atlas.graphs import heawood, petersen, theta
from systolic_atlas.graphs.census import enumerate_census
from systolic_atlas.rewrite import girth_lift


@pytest.fixture(scope="module")
def pentagon():
    return solve_pentagon()


@pytest.fixture(scope="module")
def heawood_surface(pentagon):
    return build_y_surface(heawood(), pentagon)


def test_pants_surface_validation():
    graph = theta()
    surface = PantsSurface(graph, [1.0, 2.0, 3.0])
    assert surface.twists == [0.0, 0.0, 0.0]
    assert surface.genus == 2
    assert surface.curve_lengths() == {(0, 3): 1.0, (1, 4): 2.0, (2, 5): 3.0}
    assert surface.in_band(1.0, 3.0)
    assert not surface.in_band(1.5, 3.0)
    with pytest.raises(ParamError):
        PantsSurface(graph, [1.0, 2.0])
    with pytest.raises(ParamError):
        PantsSurface(graph, [1.0, 0.0, 3.0])
    with pytest.raises(ParamError):
        PantsSurface(graph, [1.0, 2.0, 3.0], band=(0.1, 2.5))
    assert PantsSurface.from_dict(surface.to_dict()) == surface


def test_net_point():
    surface = net_point(petersen())
    assert surface.genus == 6
    assert surface.lengths == [epsilon0()] * 15
    assert surface.twists == [0.0] * 15
    assert crossing_curve_bound(epsilon0()) == pytest.approx(epsilon0())
    with pytest.raises(ParamError):
        net_point(petersen(), band=(2.0, 3.0))
    assert SURFACE_FACTORY["net_point"] is net_point


def test_hairy_torus_model():
    model = build_hairy_torus(4, 4)
    assert model.genus == 9
    assert model.singular_count == 16
    assert model.bers_lower_bound == pytest.approx(8 * model.square.t)
    assert model.bers_lower_bound > 6
    assert model.systole_length == pytest.approx(4 * model.square.side_half)
    assert HairyTorusModel.from_dict(model.to_dict()) == model


@pytest.mark.parametrize("m,n", [(2, 4), (4, 2), (3, 3), (5, 5)])
def test_hairy_torus_invalid_grid(m, n):
    with pytest.raises(ParamError):
        build_hairy_torus(m, n)


@pytest.mark.parametrize("m,n,expected", [(3, 4, False), (4, 4, True), (4, 6, True), (6, 6, True), (3, 8, False)])
def test_grid_bound_against_systole(m, n, expected):
    assert hairy_torus_report(m, n)["grid_bound_exceeds_systole"] is expected


def test_hairy_torus_report():
    report = hairy_torus_report(4, 4)
    assert report["genus"] == 9
    assert report["two_sqrt_g"] == 6.0
    assert report["bers_exceeds_2sqrt_g"]
    assert report["buser_upper_bound"] == 168
    assert report["buser_lower_bound"] == pytest.approx(math.sqrt(54) - 2)
    assert report["filling_certificate"]["passed"]


def test_bers_sweep():
    reports = bers_sweep([4, 6, 8])
    assert [report["genus"] for report in reports] == [9, 19, 33]
    bounds = [report["bers_lower_bound"] for report in reports]
    assert bounds == sorted(bounds)
    assert all(report["bers_exceeds_2sqrt_g"] for report in reports)


def test_filling_certificate():
    edges, faces = grid_torus_complex(3, 4)
    assert len(edges) == 24
    assert len(faces) == 12
    certificate = filling_certificate(3, 4)
    assert certificate["euler_characteristic"] == 0
    assert certificate["every_edge_on_two_faces"]
    assert certificate["passed"]


def test_y_genus():
    assert y_genus(14) == 22
    assert y_genus(2) == 4
    with pytest.raises(ParityError):
        y_genus(7)


def test_piece_template():
    template = piece_template()
    assert len(template.points) == 21
    assert len(template.edges) == 36
    assert len(template.pentagons) == 12
    assert template.euler_characteristic == -3
    for names in template.pentagons.values():
        kinds = [template.edges[name][0] for name in names]
        assert kinds == ["S2", "S6", "S4", "B4", "C"]


def test_glued_complex(heawood_surface):
    complex_ = heawood_surface.closed_complex()
    vertex_count = 14
    assert len(complex_.points) == 15 * vertex_count
    assert len(complex_.edges) == 30 * vertex_count
    assert len(complex_.faces) == 12 * vertex_count
    assert complex_.euler_characteristic == 2 - 2 * heawood_surface.genus
    assert glue_template(theta(), piece_template()).euler_characteristic == -6


def test_curve_system_fills(heawood_surface):
    regions = complementary_regions(heawood_surface.closed_complex())
    assert len(regions) == 3 * 14
    assert all(region["faces"] == 4 for region in regions)
    assert heawood_surface.filling_check() == {"regions": 42, "all_disks": True, "faces_per_region": [4]}


def test_complement_of_no_curves_is_the_whole_surface(heawood_surface):
    complex_ = heawood_surface.closed_complex()
    bare = ClosedComplex(complex_.points, complex_.edges, complex_.faces, {})
    assert complementary_regions(bare) == [
        {"faces": 12 * 14, "euler_characteristic": 2 - 2 * heawood_surface.genus}
    ]


def test_curve_lengths(heawood_surface):
    lengths = heawood_surface.curve_lengths()
    assert len(lengths) == 4 * 14 + 3 * 14 // 2
    for length in lengths.values():
        assert length == pytest.approx(heawood_surface.s, abs=1e-12)


def test_heawood_certificate(heawood_surface):
    assert heawood_surface.genus == 22
    report = verify_systole_certificate(heawood_surface)
    assert report.passed
    assert report.failed() == []
    assert [check.number for check in report.checks] == [1, 2, 3, 4, 5, 6]
    stored = report.to_dict()
    assert stored["passed"]
    assert len(stored["checks"]) == 6


def test_low_girth_is_rejected(pentagon):
    with pytest.raises(GirthError):
        build_y_surface(petersen(), pentagon)
    model = build_y_surface(petersen(), pentagon, enforce_girth=False)
    report = verify_systole_certificate(model)
    assert not report.passed
    assert report.failed() == [1, 3]


def test_perturbed_lengths_fail(pentagon):
    perturbed = PentagonData.from_lengths(1.1 * pentagon.s, pentagon.b)
    report = verify_systole_certificate(YSurfaceModel(heawood(), perturbed))
    assert not report.passed
    assert 2 in report.failed()
    assert report.checks[1].margin < 0


def test_lifted_graph_supports_the_construction(pentagon):
    lifted, _ = girth_lift(theta())
    report = verify_systole_certificate(build_y_surface(lifted, pentagon))
    assert report.passed


def test_measured_arc_lengths(heawood_surface, pentagon):
    arcs = heawood_surface.arc_lengths()
    assert set(arcs) == set(ARC_TYPES)
    assert arcs["O"] == pytest.approx(pentagon.b / 2, abs=1e-12)
    assert arcs["P"] == pytest.approx(2 * pentagon.s / 3, abs=1e-6)
    assert arcs["Q"] == pytest.approx(pentagon.s / 2, abs=1e-12)
    assert arcs["R"] == pytest.approx(2 * pentagon.c, abs=1e-12)
    interior = template_skeleton(piece_template(), pentagon, interior=True)
    assert not any(name.startswith("beta") for _, _, name in interior.edges(keys=True))
    assert interior.number_of_edges() == 36 - 12


def test_short_connectors_fail_the_arc_and_cycle_checks(pentagon):
    shrunk = dataclasses.replace(pentagon, c=0.9 * pentagon.c)
    report = verify_systole_certificate(YSurfaceModel(heawood(), shrunk))
    assert report.failed() == [2, 3]
    margins = report.checks[1].detail["margins"]
    assert margins["R"] == pytest.approx(-0.1 * pentagon.s / 6)
    assert margins["Q"] == pytest.approx(0.0, abs=1e-12)


def test_certificate_on_lifted_census(pentagon):
    graphs = [code.to_graph() for vertex_count in (2, 4, 6) for code in enumerate_census(vertex_count).codes]
    assert len(graphs) >= 20
    for graph in graphs:
        lifted, _ = girth_lift(graph)
        report = verify_systole_certificate(build_y_surface(lifted, pentagon))
        assert report.passed, report.failed()
        # the arc bounds are attained by the template arcs, so margins are zero up to rounding
        assert min(check.margin for check in report.checks[1:]) >= -CUFF_TOLERANCE


def test_pants_surface_of_y_model(heawood_surface):
    surface = heawood_surface.pants_surface()
    assert surface.graph.vertex_count == 3 * 14
    assert surface.genus == heawood_surface.genus
    assert surface.lengths.count(heawood_surface.s) == 3 * 14
    assert surface.lengths.count(heawood_surface.b) == 3 * 14 // 2
    assert surface.in_band(0.1, 10.0)


def test_y_model_serialization(heawood_surface):
    restored = YSurfaceModel.from_dict(heawood_surface.to_dict())
    assert restored.base_graph == heawood_surface.base_graph
    assert restored.s == heawood_surface.s
    assert restored.b == heawood_surface.b
    assert restored.genus == 22


if __name__ == "__main__":
    pytest.main([__file__])
