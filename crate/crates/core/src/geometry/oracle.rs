//! Geometric ground truth: tilings grown by reflection, coordinate-addressed
//! placement, and comparison of coordinate neighbors with shared edges.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use super::{midpoint, DiscPoint, Motion};
use crate::error::Result;
use crate::numeration::check_hyperbolic;
use crate::tiling::{TileCoord, Tiling};
use crate::trigrid::{triangles_of_tile, SeamConvention, TriCoord};

/// Tolerance for identifying tiles by their centres.
pub const CENTER_TOL: f64 = 1e-6;
/// Tolerance for identifying vertices.
pub const VERTEX_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PlacedPolygon {
    /// Counter-clockwise; side `k` runs from vertex `k - 1` to vertex `k mod p`.
    pub vertices: Vec<DiscPoint>,
    pub center: DiscPoint,
    pub generation: u32,
    pub coord: Option<TileCoord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlacedTriangle {
    /// Edge `i` is opposite vertex `i`.
    pub vertices: [DiscPoint; 3],
    pub center: DiscPoint,
    pub generation: u32,
    pub coord: Option<TriCoord>,
}

impl PlacedPolygon {
    /// Endpoints of side `tau` (1-based).
    pub fn side(&self, tau: u32) -> (DiscPoint, DiscPoint) {
        let p = self.vertices.len();
        let k = tau as usize;
        (self.vertices[k - 1], self.vertices[k % p])
    }

    /// The polygon across side `tau`, numbered so that its side 1 is the
    /// shared one.
    pub fn reflect(&self, tau: u32) -> PlacedPolygon {
        let (a, b) = self.side(tau);
        let s = Motion::reflection(a, b);
        let p = self.vertices.len();
        let vertices = (0..p)
            .map(|k| s.apply(self.vertices[(tau as usize + p - k) % p]))
            .collect();
        PlacedPolygon {
            vertices,
            center: s.apply(self.center),
            generation: self.generation + 1,
            coord: None,
        }
    }

    /// The 1-triangle on side `tau`: base vertices then the centre.
    pub fn fan_triangle(&self, tau: u32) -> PlacedTriangle {
        let (a, b) = self.side(tau);
        PlacedTriangle::new([a, b, self.center], self.generation)
    }
}

impl PlacedTriangle {
    fn new(vertices: [DiscPoint; 3], generation: u32) -> Self {
        let x = vertices.iter().map(|v| v.x).sum::<f64>() / 3.0;
        let y = vertices.iter().map(|v| v.y).sum::<f64>() / 3.0;
        PlacedTriangle {
            vertices,
            center: DiscPoint { x, y },
            generation,
            coord: None,
        }
    }

    /// Endpoints of edge `i`.
    pub fn edge(&self, i: usize) -> (DiscPoint, DiscPoint) {
        (self.vertices[(i + 1) % 3], self.vertices[(i + 2) % 3])
    }

    /// Child `k`: corners keep vertex `k`, child 3 is the medial triangle.
    pub fn child(&self, k: u8) -> PlacedTriangle {
        let [v0, v1, v2] = self.vertices;
        let m0 = midpoint(v1, v2);
        let m1 = midpoint(v2, v0);
        let m2 = midpoint(v0, v1);
        let vertices = match k {
            0 => [v0, m1, m2],
            1 => [m0, v1, m2],
            2 => [m0, m1, v2],
            _ => [m0, m1, m2],
        };
        PlacedTriangle::new(vertices, self.generation)
    }

    /// Signed Euclidean area; positive when counter-clockwise.
    pub fn signed_area(&self) -> f64 {
        let [a, b, c] = self.vertices;
        ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y)) / 2.0
    }
}

/// The regular polygon centred at the origin with side 1 crossing the
/// positive x-axis.
pub fn central_polygon(p: u32, q: u32) -> Result<PlacedPolygon> {
    check_hyperbolic(p, q)?;
    let (pf, qf) = (p as f64, q as f64);
    let cosh_r = 1.0 / ((PI / pf).tan() * (PI / qf).tan());
    let r = (cosh_r.acosh() / 2.0).tanh();
    let vertices = (0..p)
        .map(|k| DiscPoint::polar(r, (2 * k) as f64 * PI / pf - PI / pf).expect("inside the disc"))
        .collect();
    Ok(PlacedPolygon {
        vertices,
        center: DiscPoint::ORIGIN,
        generation: 0,
        coord: Some(TileCoord::Central),
    })
}

/// Points deduplicated within a tolerance, bucketed on a grid.
#[derive(Debug)]
pub struct PointIndex {
    tol: f64,
    cells: HashMap<(i64, i64), Vec<usize>>,
    points: Vec<DiscPoint>,
}

impl PointIndex {
    pub fn new(tol: f64) -> Self {
        PointIndex {
            tol,
            cells: HashMap::new(),
            points: Vec::new(),
        }
    }

    fn cell(&self, p: DiscPoint) -> (i64, i64) {
        (
            (p.x / self.tol).floor() as i64,
            (p.y / self.tol).floor() as i64,
        )
    }

    pub fn find(&self, p: DiscPoint) -> Option<usize> {
        let (cx, cy) = self.cell(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.cells.get(&(cx + dx, cy + dy)) {
                    if let Some(&id) = ids
                        .iter()
                        .find(|&&id| self.points[id].euclid_dist(p) < self.tol)
                    {
                        return Some(id);
                    }
                }
            }
        }
        None
    }

    /// Id of `p`, and whether it was new.
    pub fn insert(&mut self, p: DiscPoint) -> (usize, bool) {
        if let Some(id) = self.find(p) {
            return (id, false);
        }
        let id = self.points.len();
        self.points.push(p);
        let cell = self.cell(p);
        self.cells.entry(cell).or_default().push(id);
        (id, true)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct Generated {
    /// In BFS order, so generations are non-decreasing.
    pub tiles: Vec<PlacedPolygon>,
    /// Index pairs `(i, j)`, `i < j`, of tiles sharing a full edge.
    pub adjacency: Vec<(usize, usize)>,
}

/// All tiles within `depth` reflections of the central one.
///
/// Depths above 8 crowd the boundary enough to defeat the tolerances.
pub fn generate(p: u32, q: u32, depth: u32) -> Result<Generated> {
    let central = central_polygon(p, q)?;
    let mut centers = PointIndex::new(CENTER_TOL);
    centers.insert(central.center);
    let mut tiles = vec![central];
    let mut frontier = 0..1;
    for _ in 0..depth {
        let start = tiles.len();
        for i in frontier.clone() {
            for tau in 1..=p {
                let next = tiles[i].reflect(tau);
                if centers.insert(next.center).1 {
                    tiles.push(next);
                }
            }
        }
        frontier = start..tiles.len();
    }

    let mut vertices = PointIndex::new(VERTEX_TOL);
    let mut edges: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, tile) in tiles.iter().enumerate() {
        for tau in 1..=p {
            let (a, b) = tile.side(tau);
            let key = edge_key(vertices.insert(a).0, vertices.insert(b).0);
            edges.entry(key).or_default().push(i);
        }
    }
    let mut adjacency: Vec<(usize, usize)> = edges
        .values()
        .filter(|owners| owners.len() == 2)
        .map(|o| (o[0].min(o[1]), o[0].max(o[1])))
        .collect();
    adjacency.sort_unstable();
    Ok(Generated { tiles, adjacency })
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Walks from the central polygon across the sides on the path to `c`.
pub fn place(tiling: Tiling, c: TileCoord) -> Result<PlacedPolygon> {
    let mut poly = central_polygon(tiling.p(), tiling.q())?;
    for tau in tiling.path_from_center(c)? {
        poly = poly.reflect(tau);
    }
    poly.coord = Some(c);
    Ok(poly)
}

pub fn place_tri(tiling: Tiling, t: &TriCoord) -> Result<PlacedTriangle> {
    tiling.check_tri(t)?;
    Ok(place_tri_in(&place(tiling, t.tile)?, t))
}

fn place_tri_in(tile: &PlacedPolygon, t: &TriCoord) -> PlacedTriangle {
    let mut tri = tile.fan_triangle(t.digits[0] as u32);
    for &d in &t.digits[1..] {
        tri = tri.child(d);
    }
    tri.coord = Some(t.clone());
    tri
}

/// Neighbor functions under test; [`Tiling`] is the real implementation.
pub trait Navigator {
    fn tiling(&self) -> Tiling;
    fn tile_neighbor(&self, c: TileCoord, tau: u32) -> Result<(TileCoord, u32)>;
    fn tri_neighbors(&self, t: &TriCoord) -> Result<[TriCoord; 3]>;
}

impl Navigator for Tiling {
    fn tiling(&self) -> Tiling {
        *self
    }

    fn tile_neighbor(&self, c: TileCoord, tau: u32) -> Result<(TileCoord, u32)> {
        self.neighbor_and_side(c, tau)
    }

    fn tri_neighbors(&self, t: &TriCoord) -> Result<[TriCoord; 3]> {
        Tiling::tri_neighbors(*self, t)
    }
}

/// Uses a non-default seam convention; for showing that only one agrees.
#[derive(Debug, Clone, Copy)]
pub struct WithSeam(pub Tiling, pub SeamConvention);

impl Navigator for WithSeam {
    fn tiling(&self) -> Tiling {
        self.0
    }

    fn tile_neighbor(&self, c: TileCoord, tau: u32) -> Result<(TileCoord, u32)> {
        self.0.neighbor_and_side(c, tau)
    }

    fn tri_neighbors(&self, t: &TriCoord) -> Result<[TriCoord; 3]> {
        Ok(self.0.tri_neighbors_with(t, self.1)?.neighbors)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub cell: String,
    /// Side (tiles) or neighbor index (triangles); 0 for placement faults.
    pub side: u32,
    pub computed: String,
    pub geometric: String,
}

#[derive(Debug, Clone, Default)]
pub struct AdjacencyReport {
    pub tiles: usize,
    pub triangles: usize,
    pub mismatches: Vec<Mismatch>,
}

impl AdjacencyReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares coordinate neighbors with shared edges for every tile of
/// generation `<= depth`, or for every `subdiv`-triangle of those tiles when
/// `subdiv > 0`.
///
/// Tiles one generation further out are placed too, so that every side of
/// the region has a geometric neighbor. Their placement is first checked
/// against [`generate`].
pub fn adjacency_report(
    nav: &impl Navigator,
    depth: u32,
    subdiv: usize,
) -> Result<AdjacencyReport> {
    let tiling = nav.tiling();
    let (p, q) = (tiling.p(), tiling.q());
    let mut outer = tiling.ball(depth + 1);
    outer.sort_by_key(|c| c.generation().unwrap_or(u32::MAX));
    let placed = outer
        .iter()
        .map(|&c| place(tiling, c))
        .collect::<Result<Vec<_>>>()?;
    let mut report = AdjacencyReport::default();
    check_coverage(p, q, depth + 1, &placed, &mut report.mismatches)?;

    let region = placed.iter().take_while(|t| t.generation <= depth).count();
    report.tiles = region;
    if subdiv == 0 {
        compare_tiles(nav, &placed, region, &mut report.mismatches)?;
    } else {
        compare_triangles(nav, &placed, region, subdiv, &mut report)?;
    }
    Ok(report)
}

fn check_coverage(
    p: u32,
    q: u32,
    depth: u32,
    placed: &[PlacedPolygon],
    out: &mut Vec<Mismatch>,
) -> Result<()> {
    let truth = generate(p, q, depth)?;
    let mut index = PointIndex::new(CENTER_TOL);
    for t in &truth.tiles {
        index.insert(t.center);
    }
    let mut hit = vec![false; truth.tiles.len()];
    for tile in placed {
        let name = tile.coord.map(|c| c.to_string()).unwrap_or_default();
        match index.find(tile.center) {
            None => out.push(Mismatch {
                cell: name,
                side: 0,
                computed: format!("generation {}", tile.generation),
                geometric: "outside the generated tiling".into(),
            }),
            Some(i) if hit[i] => out.push(Mismatch {
                cell: name,
                side: 0,
                computed: "placed".into(),
                geometric: "tile already claimed by another coordinate".into(),
            }),
            Some(i) => {
                hit[i] = true;
                let g = truth.tiles[i].generation;
                if g != tile.generation {
                    out.push(Mismatch {
                        cell: name,
                        side: 0,
                        computed: format!("generation {}", tile.generation),
                        geometric: format!("generation {g}"),
                    });
                }
            }
        }
    }
    let missing = hit.iter().filter(|h| !**h).count();
    if missing > 0 {
        out.push(Mismatch {
            cell: format!("ball({depth})"),
            side: 0,
            computed: format!("{} coordinates", placed.len()),
            geometric: format!("{missing} generated tiles without a coordinate"),
        });
    }
    Ok(())
}

/// Maps each undirected edge, by vertex ids, to its owners.
struct EdgeMap<K> {
    vertices: PointIndex,
    owners: HashMap<(usize, usize), Vec<K>>,
}

impl<K: Clone> EdgeMap<K> {
    fn new() -> Self {
        EdgeMap {
            vertices: PointIndex::new(VERTEX_TOL),
            owners: HashMap::new(),
        }
    }

    fn key(&mut self, a: DiscPoint, b: DiscPoint) -> (usize, usize) {
        edge_key(self.vertices.insert(a).0, self.vertices.insert(b).0)
    }

    fn add(&mut self, a: DiscPoint, b: DiscPoint, owner: K) {
        let key = self.key(a, b);
        self.owners.entry(key).or_default().push(owner);
    }

    fn others(&mut self, a: DiscPoint, b: DiscPoint, except: impl Fn(&K) -> bool) -> Vec<K> {
        let key = self.key(a, b);
        self.owners
            .get(&key)
            .map(|v| v.iter().filter(|k| !except(k)).cloned().collect())
            .unwrap_or_default()
    }
}

fn describe<T: ToString>(found: &[T]) -> String {
    match found {
        [] => "none".into(),
        _ => found
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(" | "),
    }
}

fn compare_tiles(
    nav: &impl Navigator,
    placed: &[PlacedPolygon],
    region: usize,
    out: &mut Vec<Mismatch>,
) -> Result<()> {
    let p = nav.tiling().p();
    let mut edges = EdgeMap::new();
    for tile in placed {
        let c = tile.coord.expect("placed tiles carry coordinates");
        for tau in 1..=p {
            let (a, b) = tile.side(tau);
            edges.add(a, b, (c, tau));
        }
    }
    for tile in &placed[..region] {
        let c = tile.coord.expect("placed tiles carry coordinates");
        for tau in 1..=p {
            let (a, b) = tile.side(tau);
            let found = edges.others(a, b, |(o, _)| *o == c);
            let computed = nav.tile_neighbor(c, tau)?;
            if found.as_slice() != [computed] {
                out.push(Mismatch {
                    cell: c.to_string(),
                    side: tau,
                    computed: format!("{} (side {})", computed.0, computed.1),
                    geometric: describe(
                        &found
                            .iter()
                            .map(|(o, s)| format!("{o} (side {s})"))
                            .collect::<Vec<_>>(),
                    ),
                });
            }
        }
    }
    Ok(())
}

fn compare_triangles(
    nav: &impl Navigator,
    placed: &[PlacedPolygon],
    region: usize,
    subdiv: usize,
    report: &mut AdjacencyReport,
) -> Result<()> {
    let tiling = nav.tiling();
    let mut triangles = Vec::new();
    let mut region_triangles = 0;
    for (i, tile) in placed.iter().enumerate() {
        let c = tile.coord.expect("placed tiles carry coordinates");
        for t in triangles_of_tile(tiling, c, subdiv) {
            triangles.push(place_tri_in(tile, &t));
        }
        if i + 1 == region {
            region_triangles = triangles.len();
        }
    }
    let mut edges = EdgeMap::new();
    for (i, tri) in triangles.iter().enumerate() {
        for e in 0..3 {
            let (a, b) = tri.edge(e);
            edges.add(a, b, i);
        }
    }
    report.triangles = region_triangles;
    for (i, tri) in triangles[..region_triangles].iter().enumerate() {
        let t = tri
            .coord
            .as_ref()
            .expect("placed triangles carry coordinates");
        let computed = nav.tri_neighbors(t)?;
        for (e, expected) in computed.iter().enumerate() {
            let (a, b) = tri.edge(e);
            let found: Vec<&TriCoord> = edges
                .others(a, b, |&o| o == i)
                .into_iter()
                .map(|o| triangles[o].coord.as_ref().expect("coordinates"))
                .collect();
            if found.as_slice() != [expected] {
                report.mismatches.push(Mismatch {
                    cell: t.to_string(),
                    side: e as u32 + 1,
                    computed: expected.to_string(),
                    geometric: describe(&found),
                });
            }
        }
    }
    Ok(())
}

/// Degree histogram of the interior vertices of the `subdiv`-triangle mesh
/// over the tiles of generation `<= depth`.
///
/// A vertex is interior when every mesh edge at it has two triangles.
pub fn degree_census(tiling: Tiling, depth: u32, subdiv: usize) -> Result<BTreeMap<usize, usize>> {
    let mut vertices = PointIndex::new(VERTEX_TOL);
    let mut incident: Vec<usize> = Vec::new();
    let mut edge_count: HashMap<(usize, usize), usize> = HashMap::new();
    for c in tiling.ball(depth) {
        let tile = place(tiling, c)?;
        for t in triangles_of_tile(tiling, c, subdiv.max(1)) {
            let tri = place_tri_in(&tile, &t);
            let ids = tri.vertices.map(|v| vertices.insert(v).0);
            incident.resize(vertices.len(), 0);
            for &id in &ids {
                incident[id] += 1;
            }
            for e in 0..3 {
                *edge_count
                    .entry(edge_key(ids[(e + 1) % 3], ids[(e + 2) % 3]))
                    .or_default() += 1;
            }
        }
    }
    let mut boundary = vec![false; vertices.len()];
    for (&(a, b), &n) in &edge_count {
        if n < 2 {
            boundary[a] = true;
            boundary[b] = true;
        }
    }
    let mut census = BTreeMap::new();
    for (id, &deg) in incident.iter().enumerate() {
        if !boundary[id] {
            *census.entry(deg).or_default() += 1;
        }
    }
    Ok(census)
}
