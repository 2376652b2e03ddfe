//! ASCII OFF triangle meshes with closed-manifold validation.
//!
//! Besides the classic `OFF` header, the `nOFF` variant is accepted with an
//! explicit embedding dimension on the following token. That lets a flat
//! torus be supplied isometrically embedded in R⁴.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use crate::{Error, Result};

/// Triangles whose area falls below this multiple of their longest edge
/// squared are rejected as degenerate.
pub const DEGENERATE_AREA_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct MeshComponent {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    pub genus: i64,
}

/// A validated closed, oriented, manifold triangle mesh.
#[derive(Clone, Debug)]
pub struct Mesh {
    pub path: Option<PathBuf>,
    dim: usize,
    coords: Vec<f64>,
    faces: Vec<[usize; 3]>,
    /// Connected component index of each vertex.
    vertex_component: Vec<usize>,
    components: Vec<MeshComponent>,
}

impl Mesh {
    /// Validates raw data. `coords` holds `dim` numbers per vertex.
    pub fn new(dim: usize, coords: Vec<f64>, faces: Vec<[usize; 3]>) -> Result<Self> {
        if dim < 2 || !coords.len().is_multiple_of(dim) {
            return Err(Error::InvalidComponent(format!("vertex data does not split into {dim}-tuples")));
        }
        let mut mesh = Mesh {
            path: None,
            dim,
            coords,
            faces,
            vertex_component: Vec::new(),
            components: Vec::new(),
        };
        mesh.validate()?;
        Ok(mesh)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn vertex(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn components(&self) -> &[MeshComponent] {
        &self.components
    }

    pub fn vertex_component(&self, v: usize) -> usize {
        self.vertex_component[v]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.components.iter().map(|c| c.euler).sum()
    }

    /// Total genus summed over connected components.
    pub fn genus(&self) -> i64 {
        self.components.iter().map(|c| c.genus).sum()
    }

    pub fn edge_length(&self, a: usize, b: usize) -> f64 {
        self.vertex(a).iter().zip(self.vertex(b)).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
    }

    /// Edge lengths `(l0, l1, l2)` of a face, `li` opposite corner `i`.
    pub fn face_lengths(&self, f: usize) -> [f64; 3] {
        let [a, b, c] = self.faces[f];
        [self.edge_length(b, c), self.edge_length(c, a), self.edge_length(a, b)]
    }

    pub fn face_area(&self, f: usize) -> f64 {
        heron(self.face_lengths(f))
    }

    pub fn total_area(&self) -> f64 {
        (0..self.faces.len()).map(|f| self.face_area(f)).sum()
    }

    fn validate(&mut self) -> Result<()> {
        let nv = self.vertex_count();
        let mut referenced = vec![false; nv];
        for (fi, face) in self.faces.iter().enumerate() {
            for &v in face {
                if v >= nv {
                    return Err(Error::InvalidComponent(format!("face {fi} references vertex {v}, only {nv} exist")));
                }
                referenced[v] = true;
            }
        }
        if let Some(v) = referenced.iter().position(|r| !r) {
            return Err(Error::UnreferencedVertex(v));
        }
        for fi in 0..self.faces.len() {
            let [a, b, c] = self.faces[fi];
            let lengths = self.face_lengths(fi);
            let longest = lengths.iter().fold(0.0f64, |m, &l| m.max(l));
            let area = heron(lengths);
            if a == b || b == c || a == c || !(area > DEGENERATE_AREA_TOL * longest * longest) {
                return Err(Error::DegenerateTriangle { index: fi, area });
            }
        }

        // Each undirected edge must be used exactly twice, once per direction.
        let mut edges: HashMap<(usize, usize), Vec<(usize, bool)>> = HashMap::new();
        for (fi, &[a, b, c]) in self.faces.iter().enumerate() {
            for (u, v) in [(a, b), (b, c), (c, a)] {
                let key = (u.min(v), u.max(v));
                edges.entry(key).or_default().push((fi, u < v));
            }
        }
        let mut keys: Vec<_> = edges.keys().copied().collect();
        keys.sort_unstable();
        for key in &keys {
            let uses = &edges[key];
            match uses.len() {
                1 => return Err(Error::BoundaryEdge(key.0, key.1)),
                2 if uses[0].1 == uses[1].1 => return Err(Error::InconsistentOrientation(uses[0].0, uses[1].0)),
                2 => {}
                n => return Err(Error::NonManifoldEdge(key.0, key.1, n)),
            }
        }

        // The faces around each vertex must form a single fan.
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (fi, face) in self.faces.iter().enumerate() {
            for &v in face {
                incident[v].push(fi);
            }
        }
        for (v, fan) in incident.iter().enumerate() {
            let mut link = UnionFind::new(fan.len());
            for i in 0..fan.len() {
                for j in i + 1..fan.len() {
                    let shared = self.faces[fan[i]].iter().filter(|&&w| w != v && self.faces[fan[j]].contains(&w)).count();
                    if shared > 0 {
                        link.union(i, j);
                    }
                }
            }
            if link.count() != 1 {
                return Err(Error::NonManifoldVertex(v));
            }
        }

        let mut uf = UnionFind::new(nv);
        for &[a, b, c] in &self.faces {
            uf.union(a, b);
            uf.union(b, c);
        }
        let mut label = HashMap::new();
        self.vertex_component = (0..nv)
            .map(|v| {
                let root = uf.find(v);
                let next = label.len();
                *label.entry(root).or_insert(next)
            })
            .collect();
        let mut comps = vec![MeshComponent { vertices: 0, edges: 0, faces: 0, euler: 0, genus: 0 }; label.len()];
        for v in 0..nv {
            comps[self.vertex_component[v]].vertices += 1;
        }
        for key in &keys {
            comps[self.vertex_component[key.0]].edges += 1;
        }
        for face in &self.faces {
            comps[self.vertex_component[face[0]]].faces += 1;
        }
        for c in &mut comps {
            c.euler = c.vertices as i64 - c.edges as i64 + c.faces as i64;
            c.genus = 1 - c.euler / 2;
        }
        self.components = comps;
        Ok(())
    }
}

/// Triangle area from edge lengths (Kahan's stable Heron formula).
pub fn heron(lengths: [f64; 3]) -> f64 {
    let mut l = lengths;
    l.sort_by(|a, b| b.total_cmp(a));
    let [a, b, c] = l;
    let p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    if p <= 0.0 {
        0.0
    } else {
        0.25 * p.sqrt()
    }
}

struct UnionFind {
    parent: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), sets: n }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.sets -= 1;
        }
    }

    fn count(&self) -> usize {
        self.sets
    }
}

/// Reads and validates an OFF file.
pub fn load_mesh(path: impl AsRef<Path>) -> Result<Mesh> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let mut mesh = parse_off(&text, &path.display().to_string())?;
    mesh.path = Some(path.to_path_buf());
    Ok(mesh)
}

/// Parses OFF text. `origin` labels parse errors.
pub fn parse_off(text: &str, origin: &str) -> Result<Mesh> {
    let mut tokens = Tokens::new(text, origin);
    let (header, line, col) = tokens.next_raw()?;
    let dim = match header {
        "OFF" => 3,
        "nOFF" => tokens.next_usize("embedding dimension")?,
        other => return Err(tokens.error_at(line, col, format!("expected OFF header, found `{other}`"))),
    };
    if dim < 2 {
        return Err(tokens.error_at(line, col, format!("embedding dimension {dim} is below 2")));
    }
    let nv = tokens.next_usize("vertex count")?;
    let nf = tokens.next_usize("face count")?;
    let _ne = tokens.next_usize("edge count")?;
    let mut coords = Vec::with_capacity(nv * dim);
    for _ in 0..nv * dim {
        coords.push(tokens.next_f64()?);
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (arity, line, col) = tokens.next_parsed::<usize>("face arity")?;
        if arity != 3 {
            return Err(tokens.error_at(line, col, format!("only triangles are supported, found a {arity}-gon")));
        }
        let mut face = [0; 3];
        for slot in &mut face {
            let (v, line, col) = tokens.next_parsed::<usize>("vertex index")?;
            if v >= nv {
                return Err(tokens.error_at(line, col, format!("vertex index {v} out of range (0..{nv})")));
            }
            *slot = v;
        }
        faces.push(face);
        tokens.skip_rest_of_line();
    }
    if let Ok((extra, line, col)) = tokens.next_raw() {
        return Err(tokens.error_at(line, col, format!("unexpected trailing token `{extra}`")));
    }
    Mesh::new(dim, coords, faces)
}

/// Whitespace tokenizer that tracks 1-based line and column and drops `#` comments.
struct Tokens<'a> {
    origin: &'a str,
    lines: Vec<&'a str>,
    line: usize,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str, origin: &'a str) -> Self {
        let lines = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect();
        Self { origin, lines, line: 0, pos: 0 }
    }

    fn error_at(&self, line: usize, col: usize, msg: String) -> Error {
        Error::Parse { path: self.origin.to_string(), line, col, msg }
    }

    fn next_raw(&mut self) -> Result<(&'a str, usize, usize)> {
        while self.line < self.lines.len() {
            let text = self.lines[self.line];
            let rest = &text[self.pos..];
            let trimmed = rest.trim_start();
            if trimmed.is_empty() {
                self.line += 1;
                self.pos = 0;
                continue;
            }
            let start = self.pos + (rest.len() - trimmed.len());
            let len = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
            self.pos = start + len;
            return Ok((&text[start..start + len], self.line + 1, start + 1));
        }
        let line = self.lines.len().max(1);
        Err(self.error_at(line, 1, "unexpected end of file".into()))
    }

    fn next_parsed<T: std::str::FromStr>(&mut self, what: &str) -> Result<(T, usize, usize)> {
        let (tok, line, col) = self.next_raw()?;
        tok.parse()
            .map(|v| (v, line, col))
            .map_err(|_| self.error_at(line, col, format!("expected {what}, found `{tok}`")))
    }

    fn next_usize(&mut self, what: &str) -> Result<usize> {
        self.next_parsed(what).map(|(v, _, _)| v)
    }

    fn next_f64(&mut self) -> Result<f64> {
        let (v, line, col) = self.next_parsed::<f64>("coordinate")?;
        if !v.is_finite() {
            return Err(self.error_at(line, col, "non-finite coordinate".into()));
        }
        Ok(v)
    }

    /// Ignores per-face colour data that some writers append.
    fn skip_rest_of_line(&mut self) {
        if self.line < self.lines.len() {
            self.line += 1;
            self.pos = 0;
        }
    }
}
