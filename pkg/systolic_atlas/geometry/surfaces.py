"""
Surface models over cubic multigraphs: Fenchel-Nielsen data of pants decompositions and the
net points with all curves of length 2 arcsinh(1), the hairy torus made of a grid of squares,
and the surface assembled from Y-pieces over a girth >= 6 graph together with its systole
certificate.
"""

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.utils import UnionFind

from ..exceptions import GirthError, ParamError, ParityError
from ..graphs.multigraph import (
    CubicMultigraph,
    from_cmg,
    from_edge_list,
    girth,
    owner,
    to_cmg,
)
from .hypgeom import (
    PentagonData,
    SquareData,
    collar_width,
    epsilon0,
    pants_cuff_distance,
    solve_pentagon,
    square_data,
)

DEFAULT_BAND = (0.1, 10.0)
CERTIFICATE_TOLERANCE = 1e-9
CUFF_TOLERANCE = 1e-6


def _graph_to_dict(graph: CubicMultigraph) -> Dict:
    return {"cmg": to_cmg(graph), "pairing": list(graph.pairing)}


def _graph_from_dict(payload: Dict) -> CubicMultigraph:
    if "pairing" in payload:
        return CubicMultigraph(len(payload["pairing"]) // 3, payload["pairing"])
    return from_cmg(payload["cmg"])


class PantsSurface:
    """
    Pants decomposition with dual graph `graph`, one length and one twist per curve. Curves are
    the edges of the graph in the order of graph.edges().
    """

    def __init__(
        self,
        graph: CubicMultigraph,
        lengths: Sequence[float],
        twists: Optional[Sequence[float]] = None,
        band: Optional[Tuple[float, float]] = None,
    ):
        """
        :param graph: dual graph of the decomposition
        :param lengths: positive curve lengths
        :param twists: twist parameters, zero by default
        :param band: optional [a, b] band the lengths must lie in
        """
        if twists is None:
            twists = [0.0] * len(lengths)
        if len(lengths) != graph.edge_count or len(twists) != graph.edge_count:
            raise ParamError(
                f"Expected {graph.edge_count} lengths and twists, got {len(lengths)} and {len(twists)}."
            )
        if any(not length > 0 for length in lengths):
            raise ParamError("Curve lengths must be positive.")
        self.graph = graph
        self.lengths = [float(length) for length in lengths]
        self.twists = [float(twist) for twist in twists]
        self.band = band
        if band is not None and not self.in_band(*band):
            raise ParamError(f"Curve lengths leave the band [{band[0]}, {band[1]}].")

    @property
    def genus(self) -> int:
        return self.graph.genus

    def in_band(self, a: float, b: float) -> bool:
        return all(a <= length <= b for length in self.lengths)

    def curve_lengths(self) -> Dict[Tuple[int, int], float]:
        return dict(zip(self.graph.edges(), self.lengths))

    def to_dict(self) -> Dict:
        return {
            "graph": _graph_to_dict(self.graph),
            "lengths": self.lengths,
            "twists": self.twists,
            "band": list(self.band) if self.band is not None else None,
        }

    @classmethod
    def from_dict(cls, payload: Dict) -> "PantsSurface":
        band = tuple(payload["band"]) if payload.get("band") is not None else None
        return cls(_graph_from_dict(payload["graph"]), payload["lengths"], payload["twists"], band)

    def __eq__(self, other):
        if not isinstance(other, PantsSurface):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.lengths == other.lengths
            and self.twists == other.twists
            and self.band == other.band
        )


def net_point(graph: CubicMultigraph, band: Tuple[float, float] = DEFAULT_BAND) -> PantsSurface:
    """
    The surface with every pants curve of length 2 arcsinh(1) and every twist 0. A curve crossing a
    pants curve runs through its whole collar and so has length at least 2 * collar_width(eps0) = eps0.
    """
    length = epsilon0()
    return PantsSurface(graph, [length] * graph.edge_count, [0.0] * graph.edge_count, band)


def crossing_curve_bound(length: float) -> float:
    """Lower bound 2 * collar_width(l) on curves crossing a geodesic of length l."""
    return 2 * collar_width(length)


@dataclass
class HairyTorusModel:
    """
    m x n grid of squares with corner angle pi/4 on a torus, doubly covered and branched over the
    mn grid vertices.
    """

    m: int
    n: int
    genus: int
    square: SquareData
    singular_count: int
    basic_pair_distance: float
    systole_length: float
    bers_lower_bound: float

    def to_dict(self) -> Dict:
        return {
            "m": self.m,
            "n": self.n,
            "genus": self.genus,
            "singular_count": self.singular_count,
            "basic_pair_distance": self.basic_pair_distance,
            "systole_length": self.systole_length,
            "bers_lower_bound": self.bers_lower_bound,
            "square": self.square.to_dict(),
        }

    @classmethod
    def from_dict(cls, payload: Dict) -> "HairyTorusModel":
        return build_hairy_torus(payload["m"], payload["n"])


def build_hairy_torus(m: int, n: int) -> HairyTorusModel:
    """
    :param m: grid rows, >= 3
    :param n: grid columns, >= 3, with mn even
    :return: HairyTorusModel with genus (mn + 2) / 2
    """
    if m < 3 or n < 3:
        raise ParamError(f"The grid needs m, n >= 3, got ({m}, {n}).")
    if (m * n) % 2 != 0:
        raise ParamError(f"The branched double cover needs mn even, got {m}x{n}.")
    square = square_data()
    return HairyTorusModel(
        m=m,
        n=n,
        genus=(m * n + 2) // 2,
        square=square,
        singular_count=m * n,
        basic_pair_distance=square.basic_pair_distance,
        # each path between a basic pair of cone points lifts to two arcs of a closed curve
        systole_length=2 * square.basic_pair_distance,
        bers_lower_bound=2 * square.t * min(m, n),
    )


def grid_torus_complex(m: int, n: int) -> Tuple[List[Tuple[int, int]], List[List[int]]]:
    """
    Edges and square faces of the m x n grid on the torus. Vertex (i, j) is i * n + j; a face lists
    the indices of its four edges.
    """
    edges: List[Tuple[int, int]] = []
    index: Dict[Tuple[str, int, int], int] = {}
    for i in range(m):
        for j in range(n):
            index[("h", i, j)] = len(edges)
            edges.append((i * n + j, i * n + (j + 1) % n))
            index[("v", i, j)] = len(edges)
            edges.append((i * n + j, ((i + 1) % m) * n + j))
    faces = [
        [index[("h", i, j)], index[("v", i, (j + 1) % n)], index[("h", (i + 1) % m, j)], index[("v", i, j)]]
        for i in range(m)
        for j in range(n)
    ]
    return edges, faces


def filling_certificate(m: int, n: int) -> Dict:
    """
    The systoles project onto all grid sides. They fill iff every complementary face is a disk;
    here every face is a single square and the Euler characteristic of the grid is that of the torus.
    """
    edges, faces = grid_torus_complex(m, n)
    incidence = [0] * len(edges)
    for face in faces:
        for e in face:
            incidence[e] += 1
    vertex_count = m * n
    euler = vertex_count - len(edges) + len(faces)
    covered = sum(1 for count in incidence if count > 0)
    return {
        "vertices": vertex_count,
        "edges": len(edges),
        "faces": len(faces),
        "euler_characteristic": euler,
        "covered_edges": covered,
        "all_faces_four_sided": all(len(set(face)) == 4 for face in faces),
        "every_edge_on_two_faces": all(count == 2 for count in incidence),
        "passed": euler == 0
        and covered == len(edges)
        and all(len(set(face)) == 4 for face in faces)
        and all(count == 2 for count in incidence),
    }


def hairy_torus_report(m: int, n: int) -> Dict:
    model = build_hairy_torus(m, n)
    g = model.genus
    two_sqrt_g = 2 * math.sqrt(g)
    return {
        "m": m,
        "n": n,
        "genus": g,
        "singular_count": model.singular_count,
        "t": model.square.t,
        "systole_length": model.systole_length,
        "bers_lower_bound": model.bers_lower_bound,
        "two_sqrt_g": two_sqrt_g,
        "bers_exceeds_2sqrt_g": model.bers_lower_bound > two_sqrt_g,
        "grid_bound_exceeds_systole": model.bers_lower_bound >= model.systole_length,
        "buser_upper_bound": 21 * (g - 1),
        "buser_lower_bound": math.sqrt(6 * g) - 2,
        "filling_certificate": filling_certificate(m, n),
    }


def bers_sweep(ns: Sequence[int]) -> List[Dict]:
    """Reports for the square grids n x n."""
    return [hairy_torus_report(n, n) for n in ns]


def y_genus(vertex_count: int) -> int:
    """Genus (3V + 2) / 2 of the surface glued from V Y-pieces."""
    if vertex_count % 2 != 0:
        raise ParityError(f"A cubic graph has an even number of vertices, got {vertex_count}.")
    return (3 * vertex_count + 2) // 2


# Y-piece template. Interior vertices X_i, Z_i, W_i; boundary points q_i^+, q_i^- and r_i^a, r_i^b,
# where r_i^a sits on boundary i-1 and r_i^b on boundary i. Edge kinds carry their length.
EDGE_KINDS = ("S2", "S6", "S4", "C", "B4")


def _kind_length(kind: str, pentagon: PentagonData) -> float:
    return {
        "S2": pentagon.s / 2,
        "S6": pentagon.s / 6,
        "S4": pentagon.s / 4,
        "C": pentagon.c,
        "B4": pentagon.b / 4,
    }[kind]


@dataclass
class PieceTemplate:
    """
    Cell structure of one Y-piece: 21 points, 36 edges, 12 right-angled pentagons.

    Variables:
    edges: name -> (kind, endpoint, endpoint)
    pentagons: (boundary, pants curve, sign) -> edge names in cyclic order s/2, s/6, s/4, b/4, c
    """

    edges: Dict[str, Tuple[str, str, str]]
    pentagons: Dict[Tuple[int, int, str], List[str]]

    @property
    def points(self) -> List[str]:
        return sorted({p for _, u, v in self.edges.values() for p in (u, v)})

    @property
    def euler_characteristic(self) -> int:
        return len(self.points) - len(self.edges) + len(self.pentagons)


def piece_template() -> PieceTemplate:
    edges: Dict[str, Tuple[str, str, str]] = {}
    for i in range(3):
        edges[f"gamma{i}+"] = ("S2", f"X{i}", f"W{i}")
        edges[f"gamma{i}-"] = ("S2", f"X{i}", f"W{i}")
        edges[f"tau{i}a"] = ("S6", f"X{i}", f"Z{i}")
        edges[f"tau{i}b"] = ("S6", f"Z{i}", f"X{(i + 1) % 3}")
        edges[f"Q{i}+"] = ("S4", f"Z{i}", f"q{i}+")
        edges[f"Q{i}-"] = ("S4", f"Z{i}", f"q{i}-")
        edges[f"R{i}a"] = ("C", f"W{i}", f"r{i}a")
        edges[f"R{i}b"] = ("C", f"W{i}", f"r{i}b")
        edges[f"beta{i}+b"] = ("B4", f"q{i}+", f"r{i}b")
        edges[f"beta{i}-b"] = ("B4", f"q{i}-", f"r{i}b")
        edges[f"beta{i}-a"] = ("B4", f"q{i}-", f"r{(i + 1) % 3}a")
        edges[f"beta{i}+a"] = ("B4", f"q{i}+", f"r{(i + 1) % 3}a")
    pentagons: Dict[Tuple[int, int, str], List[str]] = {}
    for b in range(3):
        for a in (b, (b + 1) % 3):
            for sign in ("+", "-"):
                if a == b:
                    pentagons[(b, a, sign)] = [
                        f"gamma{a}{sign}",
                        f"tau{b}a",
                        f"Q{b}{sign}",
                        f"beta{b}{sign}b",
                        f"R{a}b",
                    ]
                else:
                    pentagons[(b, a, sign)] = [
                        f"gamma{a}{sign}",
                        f"tau{b}b",
                        f"Q{b}{sign}",
                        f"beta{b}{sign}a",
                        f"R{a}a",
                    ]
    return PieceTemplate(edges, pentagons)


ARC_TYPES = ("O", "P", "Q", "R")


def boundary_points(i: int) -> List[str]:
    """Points of the template on boundary i, in cyclic order."""
    return [f"q{i}+", f"r{i}b", f"q{i}-", f"r{(i + 1) % 3}a"]


def template_skeleton(template: PieceTemplate, pentagon: PentagonData, interior: bool = False) -> nx.MultiGraph:
    """
    1-skeleton of one piece weighted by edge length. With interior=True the boundary edges are left
    out, so paths are arcs through the piece.
    """
    skeleton = nx.MultiGraph()
    for name, (kind, a, b) in template.edges.items():
        if interior and kind == "B4":
            continue
        skeleton.add_edge(a, b, key=name, length=_kind_length(kind, pentagon))
    return skeleton


def _distance_between(skeleton: nx.MultiGraph, sources: Sequence[str], targets: Sequence[str]) -> float:
    lengths = nx.multi_source_dijkstra_path_length(skeleton, set(sources), weight="length")
    return min(lengths.get(target, math.inf) for target in targets)


def _curve_length(template: PieceTemplate, pentagon: PentagonData, prefix: str) -> float:
    return sum(_kind_length(kind, pentagon) for name, (kind, _, _) in template.edges.items() if name.startswith(prefix))


def measured_arc_lengths(template: PieceTemplate, pentagon: PentagonData, system_length: float) -> Dict[str, float]:
    """
    Shortest arcs of each type in one piece, measured on its weighted 1-skeleton.

    O: an arc with both ends on pants curve gamma closes up with the two halves of gamma into the
       boundary curve and a system curve, so 2 O >= boundary + system_length - gamma.
    P: crosses two pants from cuff to cuff, twice the cuff distance of the pants.
    Q: from q^+ to q^- of one boundary through the interior.
    R: between two distinct boundary curves through the interior.
    :param template: piece template
    :param pentagon: edge lengths
    :param system_length: length of the shortest curve of the curve system
    :return: arc type -> length
    """
    interior = template_skeleton(template, pentagon, interior=True)
    pants = [_curve_length(template, pentagon, f"gamma{i}") for i in range(3)]
    boundaries = [_curve_length(template, pentagon, f"beta{i}") for i in range(3)]
    return {
        "O": min(
            (boundaries[i] + system_length - gamma) / 2 for i in range(3) for gamma in (pants[i], pants[(i + 1) % 3])
        ),
        "P": min(2 * pants_cuff_distance(pants[i], pants[(i + 1) % 3], boundaries[i]) for i in range(3)),
        "Q": min(_distance_between(interior, [f"q{i}+"], [f"q{i}-"]) for i in range(3)),
        "R": min(
            _distance_between(interior, boundary_points(i), boundary_points(j))
            for i, j in itertools.combinations(range(3), 2)
        ),
    }


@dataclass
class ClosedComplex:
    """
    Cell structure of the closed glued surface. Points and edges are union-find representatives
    of (piece, name) labels.
    """

    points: List
    edges: Dict
    faces: Dict
    curve_edges: Dict[str, List]

    @property
    def euler_characteristic(self) -> int:
        return len(self.points) - len(self.edges) + len(self.faces)


def _boundary_gluing(i: int, j: int) -> Dict[str, str]:
    """
    Point and edge names of boundary i of one piece matched with boundary j of the other piece,
    orientation reversed: q^+ and q^- keep their sign, r^b meets r^a.
    """
    return {
        f"q{i}+": f"q{j}+",
        f"q{i}-": f"q{j}-",
        f"r{i}b": f"r{(j + 1) % 3}a",
        f"r{(i + 1) % 3}a": f"r{j}b",
        f"beta{i}+b": f"beta{j}+a",
        f"beta{i}-b": f"beta{j}-a",
        f"beta{i}-a": f"beta{j}-b",
        f"beta{i}+a": f"beta{j}+b",
    }


def glue_template(graph: CubicMultigraph, template: PieceTemplate) -> ClosedComplex:
    """
    One piece per vertex; half-edge 3u + i is boundary i of piece u. Boundaries of the two halves
    of every edge are glued without twist.
    """
    point_sets = UnionFind((u, point) for u in range(graph.vertex_count) for point in template.points)
    edge_sets = UnionFind((u, name) for u in range(graph.vertex_count) for name in template.edges)
    for h, p in graph.edges():
        u, i = owner(h), h % 3
        v, j = owner(p), p % 3
        for name, other in _boundary_gluing(i, j).items():
            if name.startswith("beta"):
                edge_sets.union((u, name), (v, other))
            else:
                point_sets.union((u, name), (v, other))
    points = sorted({point_sets[(u, point)] for u in range(graph.vertex_count) for point in template.points})
    edges = {}
    for u in range(graph.vertex_count):
        for name, (kind, a, b) in template.edges.items():
            key = edge_sets[(u, name)]
            edges.setdefault(key, (kind, point_sets[(u, a)], point_sets[(u, b)]))
    faces = {
        (u,) + key: [edge_sets[(u, name)] for name in names]
        for u in range(graph.vertex_count)
        for key, names in template.pentagons.items()
    }
    curve_edges: Dict[str, List] = {}
    for u in range(graph.vertex_count):
        for i in range(3):
            curve_edges[f"gamma[{u},{i}]"] = [edge_sets[(u, f"gamma{i}+")], edge_sets[(u, f"gamma{i}-")]]
        curve_edges[f"tau[{u}]"] = [edge_sets[(u, f"tau{i}{x}")] for i in range(3) for x in "ab"]
    for h, p in graph.edges():
        u, i = owner(h), h % 3
        v, j = owner(p), p % 3
        curve_edges[f"Q[{u},{i}|{v},{j}]"] = [
            edge_sets[(u, f"Q{i}+")],
            edge_sets[(u, f"Q{i}-")],
            edge_sets[(v, f"Q{j}-")],
            edge_sets[(v, f"Q{j}+")],
        ]
    return ClosedComplex(points, edges, faces, curve_edges)


def complementary_regions(complex_: ClosedComplex) -> List[Dict]:
    """
    Connected components of the complement of the curve system, each with its Euler
    characteristic (points off the curves - edges off the curves + faces).
    """
    curve_edge_set = {e for edges in complex_.curve_edges.values() for e in edges}
    curve_points = set()
    for e in curve_edge_set:
        _, a, b = complex_.edges[e]
        curve_points.update((a, b))
    faces_graph = nx.Graph()
    faces_graph.add_nodes_from(complex_.faces)
    edge_faces: Dict = {}
    for face, edges in complex_.faces.items():
        for e in edges:
            edge_faces.setdefault(e, []).append(face)
    for e, faces in edge_faces.items():
        if e not in curve_edge_set:
            faces_graph.add_edges_from((faces[0], face) for face in faces[1:])
    regions = []
    for component in nx.connected_components(faces_graph):
        edges = {e for face in component for e in complex_.faces[face] if e not in curve_edge_set}
        points = {p for e in edges for p in complex_.edges[e][1:] if p not in curve_points}
        regions.append(
            {"faces": len(component), "euler_characteristic": len(points) - len(edges) + len(component)}
        )
    return regions


@dataclass
class CheckResult:
    number: int
    name: str
    value: float
    bound: float
    margin: float
    passed: bool
    detail: Dict = field(default_factory=dict)


@dataclass
class CertificateReport:
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed(self) -> List[int]:
        return [check.number for check in self.checks if not check.passed]

    def to_dict(self) -> Dict:
        return {
            "passed": self.passed,
            "failed": self.failed(),
            "checks": [check.__dict__ for check in self.checks],
        }


class YSurfaceModel:
    """
    Closed surface glued from one Y-piece per vertex of a cubic graph. Each piece has three
    boundary curves of length b and three interior pants curves of length s.
    """

    def __init__(self, base_graph: CubicMultigraph, pentagon: PentagonData):
        self.base_graph = base_graph
        self.pentagon = pentagon
        self.genus = y_genus(base_graph.vertex_count)
        self._template = piece_template()
        self._complex: Optional[ClosedComplex] = None

    @property
    def s(self) -> float:
        return self.pentagon.s

    @property
    def b(self) -> float:
        return self.pentagon.b

    def template(self) -> PieceTemplate:
        return self._template

    def closed_complex(self) -> ClosedComplex:
        if self._complex is None:
            self._complex = glue_template(self.base_graph, self._template)
        return self._complex

    def curve_lengths(self) -> Dict[str, float]:
        """Lengths of the curve system: per piece three pants curves and the hexagon curve, one curve per gluing."""
        complex_ = self.closed_complex()
        return {
            name: sum(_kind_length(complex_.edges[e][0], self.pentagon) for e in edges)
            for name, edges in complex_.curve_edges.items()
        }

    def arc_bounds(self) -> Dict[str, float]:
        """Lower bounds the arcs of each type must meet."""
        return {"O": self.b / 2, "P": 2 * self.s / 3, "Q": self.s / 2, "R": self.s / 6}

    def arc_lengths(self) -> Dict[str, float]:
        return measured_arc_lengths(self._template, self.pentagon, min(self.curve_lengths().values()))

    def filling_check(self) -> Dict:
        regions = complementary_regions(self.closed_complex())
        return {
            "regions": len(regions),
            "all_disks": all(region["euler_characteristic"] == 1 for region in regions),
            "faces_per_region": sorted({region["faces"] for region in regions}),
        }

    def pants_surface(self) -> PantsSurface:
        """
        Fenchel-Nielsen data: pants 3u + i is bounded by the pants curves i and i+1 of piece u and by
        its boundary i. Pants curves have length s, glued boundaries length b, all twists are 0.
        """
        edges = []
        for u in range(self.base_graph.vertex_count):
            for i in range(3):
                edges.append((3 * u + i, 3 * u + (i + 1) % 3))
        edges.extend(self.base_graph.edges())
        pants_graph = from_edge_list(3 * self.base_graph.vertex_count, edges)
        # gluing edges come last, so they take the third slot at both ends
        lengths = [self.b if h % 3 == 2 else self.s for h, _ in pants_graph.edges()]
        return PantsSurface(pants_graph, lengths, [0.0] * len(lengths), DEFAULT_BAND)

    def to_dict(self) -> Dict:
        return {
            "graph": _graph_to_dict(self.base_graph),
            "genus": self.genus,
            "s": self.s,
            "b": self.b,
            "c": self.pentagon.c,
            "arc_bounds": self.arc_bounds(),
            "arc_lengths": self.arc_lengths(),
        }

    @classmethod
    def from_dict(cls, payload: Dict) -> "YSurfaceModel":
        pentagon = PentagonData.from_lengths(payload["s"], payload["b"])
        return cls(_graph_from_dict(payload["graph"]), pentagon)


def build_y_surface(
    graph: CubicMultigraph, pentagon: Optional[PentagonData] = None, enforce_girth: bool = True
) -> YSurfaceModel:
    """
    :param graph: base graph, girth >= 6
    :param pentagon: pentagon lengths, solved by default
    :param enforce_girth: raise GirthError for girth < 6; off only for negative controls
    :return: YSurfaceModel
    """
    if enforce_girth:
        graph_girth = girth(graph)
        if graph_girth < 6:
            raise GirthError(
                f"The Y-piece construction needs girth >= 6, got {graph_girth}. Run girth_lift first."
            )
    if pentagon is None:
        pentagon = solve_pentagon()
    return YSurfaceModel(graph, pentagon)


def _check(number: int, name: str, value: float, bound: float, tolerance: float, **detail) -> CheckResult:
    margin = value - bound
    return CheckResult(number, name, value, bound, margin, margin >= -tolerance, detail)


def verify_systole_certificate(model: YSurfaceModel, tolerance: float = CERTIFICATE_TOLERANCE) -> CertificateReport:
    """
    Evaluates the six inequalities that make every curve of the curve system a systole. Failures
    are reported with negative margins.
    """
    s, b = model.s, model.b
    graph_girth = girth(model.base_graph)
    arcs = model.arc_lengths()
    bounds = model.arc_bounds()
    cuff = pants_cuff_distance(s, s, b)
    lengths = model.curve_lengths()
    worst = max(abs(length - s) for length in lengths.values())
    arc_margins = {kind: arcs[kind] - bounds[kind] for kind in ARC_TYPES}
    arc_check = CheckResult(
        2,
        "arc_bounds",
        min(arc_margins.values()),
        0.0,
        min(arc_margins.values()),
        arc_margins["P"] >= -CUFF_TOLERANCE
        and all(arc_margins[k] >= -tolerance for k in ("O", "Q", "R")),
        {"lengths": arcs, "bounds": bounds, "margins": arc_margins},
    )
    single_piece = min(3 * cuff - s, b - s)
    checks = [
        _check(1, "girth", graph_girth, 6, 0.0),
        arc_check,
        _check(3, "cycle_projection", graph_girth * arcs["R"], s, tolerance),
        _check(4, "path_projection", 2 * min(arcs["O"], arcs["P"], arcs["Q"]), s, tolerance),
        CheckResult(
            5,
            "single_piece",
            single_piece,
            0.0,
            single_piece,
            3 * cuff - s >= -CUFF_TOLERANCE and b - s > 0,
            {"three_pants": 3 * cuff, "two_arcs": b},
        ),
        CheckResult(6, "curve_lengths", worst, 0.0, -worst, worst <= tolerance, {"count": len(lengths)}),
    ]
    return CertificateReport(checks)
