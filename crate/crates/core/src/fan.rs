//! Smooth complete fans: representation, validation, faces and star fans.
//!
//! A [`Fan`] is stored as its ray generators plus its maximal cones. Every
//! maximal cone is simplicial and full-dimensional, so its faces are exactly
//! the subsets of its rays; the face poset is built once at construction by
//! downward closure.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, ToricError};
use crate::lattice;

/// A point of the lattice `N ≅ Zⁿ` (or of its dual `M`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Self(coords.into())
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_primitive(&self) -> bool {
        lattice::content(&self.0) == 1
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A cone of a simplicial fan, named by the sorted indices of its rays.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(rays: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = rays.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    /// The zero cone (the origin).
    pub fn origin() -> Self {
        Self(Vec::new())
    }

    pub fn ray(i: usize) -> Self {
        Self(vec![i])
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, ray: usize) -> bool {
        self.0.binary_search(&ray).is_ok()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.0.iter().all(|r| other.contains(*r))
    }

    pub fn with_ray(&self, ray: usize) -> Cone {
        let mut v = self.0.clone();
        if let Err(pos) = v.binary_search(&ray) {
            v.insert(pos, ray);
        }
        Cone(v)
    }

    pub fn without_ray(&self, ray: usize) -> Cone {
        Cone(self.0.iter().copied().filter(|&r| r != ray).collect())
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

/// Outcome of the smoothness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    Singular { cone: Cone, determinant: i128 },
}

impl Smoothness {
    pub fn holds(&self) -> bool {
        matches!(self, Smoothness::Smooth)
    }
}

impl fmt::Display for Smoothness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Smoothness::Smooth => write!(f, "smooth"),
            Smoothness::Singular { cone, determinant } => {
                write!(f, "cone {cone} has determinant {determinant}")
            }
        }
    }
}

/// Outcome of the completeness test, with a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Completeness {
    Complete,
    /// A codimension-one face lying in fewer or more than two maximal cones.
    BadWall {
        wall: Cone,
        cones: usize,
    },
    /// Maximal cones not reachable from the first one across walls.
    Disconnected {
        unreachable: Vec<Cone>,
    },
    /// A sampled lattice point outside every maximal cone.
    Uncovered {
        point: LatticeVector,
    },
    /// A sampled lattice point interior to two distinct maximal cones.
    Overlap {
        point: LatticeVector,
        first: Cone,
        second: Cone,
    },
}

impl Completeness {
    pub fn holds(&self) -> bool {
        matches!(self, Completeness::Complete)
    }
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Completeness::Complete => write!(f, "complete"),
            Completeness::BadWall { wall, cones } => {
                write!(f, "wall {wall} lies in {cones} maximal cone(s)")
            }
            Completeness::Disconnected { unreachable } => {
                write!(
                    f,
                    "{} maximal cone(s) unreachable across walls",
                    unreachable.len()
                )
            }
            Completeness::Uncovered { point } => write!(f, "point {point} lies in no cone"),
            Completeness::Overlap {
                point,
                first,
                second,
            } => write!(f, "point {point} is interior to both {first} and {second}"),
        }
    }
}

/// Seed and sample count of the randomized containment sweep.
pub const COMPLETENESS_SEED: u64 = 0x7041_1c0d_e5ee_d001;
pub const COMPLETENESS_SAMPLES: usize = 1000;
const SAMPLE_RADIUS: i64 = 1000;

#[derive(Debug, Clone)]
struct ConeFrame {
    adjugate: Vec<Vec<i128>>,
    determinant: i128,
}

impl ConeFrame {
    /// `det · λ` where `p = Σ λ_i u_i`.
    fn scaled_coordinates(&self, p: &[i64]) -> Vec<i128> {
        let n = p.len();
        (0..n)
            .map(|i| (0..n).map(|k| self.adjugate[k][i] * p[k] as i128).sum())
            .collect()
    }
}

/// A rational polyhedral fan with simplicial full-dimensional maximal cones.
#[derive(Debug, Clone)]
pub struct Fan {
    dim: usize,
    rays: Vec<LatticeVector>,
    maximal_cones: Vec<Cone>,
    faces: Vec<Vec<Cone>>,
    containing: HashMap<Cone, Vec<usize>>,
    frames: Vec<ConeFrame>,
    completeness: OnceLock<Completeness>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.rays == other.rays
            && self.maximal_cones == other.maximal_cones
    }
}

impl Eq for Fan {}

impl Hash for Fan {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.rays.hash(state);
        self.maximal_cones.hash(state);
    }
}

impl Fan {
    /// Builds a fan, checking every structural invariant.
    ///
    /// Rays keep the given order. Maximal cones are normalised to sorted ray
    /// sets and sorted lexicographically. Smoothness and completeness are not
    /// required here; see [`Fan::is_smooth`] and [`Fan::is_complete`].
    pub fn new(dim: usize, rays: Vec<LatticeVector>, cones: Vec<Vec<usize>>) -> Result<Fan> {
        for (index, ray) in rays.iter().enumerate() {
            if ray.dim() != dim {
                return Err(ToricError::RayDimension {
                    index,
                    expected: dim,
                    found: ray.dim(),
                });
            }
            let gcd = lattice::content(ray.coords());
            if gcd == 0 {
                return Err(ToricError::ZeroRay { index });
            }
            if gcd != 1 {
                return Err(ToricError::NonPrimitiveRay { index, gcd });
            }
        }
        for first in 0..rays.len() {
            for second in first + 1..rays.len() {
                if rays[first] == rays[second] {
                    return Err(ToricError::DuplicateRay { first, second });
                }
            }
        }

        let mut maximal_cones = Vec::with_capacity(cones.len());
        for (index, raw) in cones.iter().enumerate() {
            if raw.len() != dim {
                return Err(ToricError::ConeSize {
                    index,
                    expected: dim,
                    found: raw.len(),
                });
            }
            if let Some(&ray) = raw.iter().find(|&&r| r >= rays.len()) {
                return Err(ToricError::RayIndexOutOfRange {
                    ray,
                    count: rays.len(),
                });
            }
            let cone = Cone::new(raw.iter().copied());
            if cone.dim() != dim {
                return Err(ToricError::RepeatedRayInCone { index });
            }
            maximal_cones.push(cone);
        }
        maximal_cones.sort();
        for w in maximal_cones.windows(2) {
            if w[0] == w[1] {
                return Err(ToricError::DuplicateCone { cone: w[0].clone() });
            }
        }
        if maximal_cones.is_empty() {
            return Err(ToricError::NotComplete {
                reason: "fan has no maximal cones".into(),
            });
        }
        for index in 0..rays.len() {
            if !maximal_cones.iter().any(|c| c.contains(index)) {
                return Err(ToricError::UnusedRay { index });
            }
        }

        let mut frames = Vec::with_capacity(maximal_cones.len());
        for cone in &maximal_cones {
            let m: Vec<Vec<i64>> = cone.rays().iter().map(|&r| rays[r].0.clone()).collect();
            let (adjugate, determinant) = lattice::adjugate(&m);
            if determinant == 0 {
                return Err(ToricError::DependentCone { cone: cone.clone() });
            }
            frames.push(ConeFrame {
                adjugate,
                determinant,
            });
        }

        let mut by_dim: Vec<BTreeSet<Cone>> = vec![BTreeSet::new(); dim + 1];
        let mut containing: HashMap<Cone, Vec<usize>> = HashMap::new();
        for (ci, cone) in maximal_cones.iter().enumerate() {
            let r = cone.rays();
            for mask in 0u32..(1u32 << r.len()) {
                let face = Cone(
                    (0..r.len())
                        .filter(|b| mask & (1 << b) != 0)
                        .map(|b| r[b])
                        .collect(),
                );
                containing.entry(face.clone()).or_default().push(ci);
                by_dim[face.dim()].insert(face);
            }
        }
        let faces = by_dim
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();

        let fan = Fan {
            dim,
            rays,
            maximal_cones,
            faces,
            containing,
            frames,
            completeness: OnceLock::new(),
        };
        fan.check_walls()?;
        Ok(fan)
    }

    /// Local fan condition: a wall lies in at most two maximal cones, and two
    /// cones sharing a wall lie on opposite sides of its hyperplane.
    fn check_walls(&self) -> Result<()> {
        if self.dim == 0 {
            return Ok(());
        }
        for wall in &self.faces[self.dim - 1] {
            let cones = &self.containing[wall];
            if cones.len() > 2 {
                return Err(ToricError::OverfullWall { wall: wall.clone() });
            }
            if cones.len() == 2 {
                let side = |ci: usize| {
                    let apex = self.maximal_cones[ci]
                        .rays()
                        .iter()
                        .copied()
                        .find(|r| !wall.contains(*r))
                        .expect("maximal cone strictly contains its wall");
                    let mut m: Vec<Vec<i64>> = wall
                        .rays()
                        .iter()
                        .map(|&r| self.rays[r].0.clone())
                        .collect();
                    m.push(self.rays[apex].0.clone());
                    lattice::determinant(&m).signum()
                };
                if side(cones[0]) == side(cones[1]) {
                    return Err(ToricError::FanCondition {
                        first: self.maximal_cones[cones[0]].clone(),
                        second: self.maximal_cones[cones[1]].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[i64] {
        &self.rays[i].0
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal_cones
    }

    pub fn check_ray(&self, ray: usize) -> Result<()> {
        if ray < self.rays.len() {
            Ok(())
        } else {
            Err(ToricError::RayIndexOutOfRange {
                ray,
                count: self.rays.len(),
            })
        }
    }

    pub fn is_smooth(&self) -> Smoothness {
        for (cone, frame) in self.maximal_cones.iter().zip(&self.frames) {
            if frame.determinant.abs() != 1 {
                return Smoothness::Singular {
                    cone: cone.clone(),
                    determinant: frame.determinant,
                };
            }
        }
        Smoothness::Smooth
    }

    /// Completeness by the wall condition, adjacency connectivity and a
    /// seeded containment sweep. The result is cached.
    pub fn is_complete(&self) -> &Completeness {
        self.completeness
            .get_or_init(|| self.compute_completeness())
    }

    fn compute_completeness(&self) -> Completeness {
        let n = self.dim;
        if n == 0 {
            return Completeness::Complete;
        }
        for wall in &self.faces[n - 1] {
            let cones = self.containing[wall].len();
            if cones != 2 {
                return Completeness::BadWall {
                    wall: wall.clone(),
                    cones,
                };
            }
        }

        let mut seen = vec![false; self.maximal_cones.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(ci) = stack.pop() {
            for &r in self.maximal_cones[ci].rays() {
                let wall = self.maximal_cones[ci].without_ray(r);
                for &cj in &self.containing[&wall] {
                    if !seen[cj] {
                        seen[cj] = true;
                        stack.push(cj);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            let unreachable = self
                .maximal_cones
                .iter()
                .zip(&seen)
                .filter(|(_, s)| !**s)
                .map(|(c, _)| c.clone())
                .collect();
            return Completeness::Disconnected { unreachable };
        }

        let mut rng = ChaCha8Rng::seed_from_u64(COMPLETENESS_SEED);
        let mut sampled = 0;
        while sampled < COMPLETENESS_SAMPLES {
            let p: Vec<i64> = (0..n)
                .map(|_| rng.random_range(-SAMPLE_RADIUS..=SAMPLE_RADIUS))
                .collect();
            let norm2: i64 = p.iter().map(|x| x * x).sum();
            if norm2 == 0 || norm2 > SAMPLE_RADIUS * SAMPLE_RADIUS {
                continue;
            }
            sampled += 1;
            let mut covered = false;
            let mut interior: Option<usize> = None;
            for (ci, frame) in self.frames.iter().enumerate() {
                let sign = frame.determinant.signum();
                let coords = frame.scaled_coordinates(&p);
                if coords.iter().all(|&c| c * sign >= 0) {
                    covered = true;
                    if coords.iter().all(|&c| c * sign > 0) {
                        if let Some(first) = interior {
                            return Completeness::Overlap {
                                point: LatticeVector(p),
                                first: self.maximal_cones[first].clone(),
                                second: self.maximal_cones[ci].clone(),
                            };
                        }
                        interior = Some(ci);
                    }
                }
            }
            if !covered {
                return Completeness::Uncovered {
                    point: LatticeVector(p),
                };
            }
        }
        Completeness::Complete
    }

    /// Errors unless the fan is both smooth and complete.
    pub fn require_smooth_complete(&self) -> Result<()> {
        if let Smoothness::Singular { cone, determinant } = self.is_smooth() {
            return Err(ToricError::NotSmooth { cone, determinant });
        }
        match self.is_complete() {
            Completeness::Complete => Ok(()),
            other => Err(ToricError::NotComplete {
                reason: other.to_string(),
            }),
        }
    }

    /// All `k`-dimensional faces, sorted lexicographically.
    pub fn enumerate_faces(&self, k: usize) -> Result<&[Cone]> {
        self.faces
            .get(k)
            .map(Vec::as_slice)
            .ok_or(ToricError::FaceDimensionOutOfRange { k, dim: self.dim })
    }

    pub fn faces(&self) -> impl Iterator<Item = &Cone> {
        self.faces.iter().flatten()
    }

    /// The face with exactly these rays, if it is in the fan.
    pub fn spans_cone(&self, rays: &[usize]) -> Option<Cone> {
        let cone = Cone::new(rays.iter().copied());
        self.containing.contains_key(&cone).then_some(cone)
    }

    pub fn is_face(&self, cone: &Cone) -> bool {
        self.containing.contains_key(cone)
    }

    /// Indices of the maximal cones containing `face`, in lexicographic order.
    pub fn maximal_cones_containing(&self, face: &Cone) -> &[usize] {
        self.containing.get(face).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Dual basis of a unimodular maximal cone: `m_i` with `⟨m_i, u_j⟩ = δ_ij`
    /// for the cone's rays in sorted order.
    pub fn dual_basis(&self, cone_index: usize) -> Option<Vec<Vec<i64>>> {
        let frame = &self.frames[cone_index];
        if frame.determinant.abs() != 1 {
            return None;
        }
        let n = self.dim;
        Some(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|k| (frame.adjugate[k][i] * frame.determinant) as i64)
                        .collect()
                })
                .collect(),
        )
    }

    /// Ray generators as the rows of a matrix.
    pub fn ray_matrix(&self) -> Vec<Vec<i64>> {
        self.rays.iter().map(|r| r.0.clone()).collect()
    }

    /// Rays `γ ∉ τ` with `τ + γ` a cone of the fan, in index order.
    pub fn adjacent_rays(&self, tau: &Cone) -> Vec<usize> {
        (0..self.rays.len())
            .filter(|&g| !tau.contains(g) && self.is_face(&tau.with_ray(g)))
            .collect()
    }

    /// The quotient fan `Star(τ)` in `N / N_τ`.
    ///
    /// The projection comes from a Hermite reduction of τ's generators: the
    /// last `n − dim τ` columns of the unimodular transform form a basis of
    /// `τ^⊥ ∩ M`, and pairing with them identifies `N / N_τ` with `Z^{n−k}`.
    pub fn star_fan(&self, tau: &Cone) -> Result<StarFan> {
        if !self.is_face(tau) {
            return Err(ToricError::NotAFace { cone: tau.clone() });
        }
        let n = self.dim;
        let k = tau.dim();
        if k == 0 {
            return Ok(StarFan {
                fan: self.clone(),
                rays: (0..self.rays.len()).collect(),
            });
        }
        let generators: Vec<Vec<i64>> =
            tau.rays().iter().map(|&r| self.rays[r].0.clone()).collect();
        let hf = lattice::column_hermite(&generators, n);
        let saturated = hf.rank() == k && (0..k).all(|j| hf.h[hf.pivots[j]][j] == 1);
        if !saturated {
            return Err(ToricError::NotSmooth {
                cone: tau.clone(),
                determinant: (0..hf.rank()).map(|j| hf.h[hf.pivots[j]][j]).product(),
            });
        }
        let project = |v: &[i64]| -> Vec<i64> {
            (k..n)
                .map(|j| {
                    let x: i128 = (0..n).map(|i| hf.v[i][j] * v[i] as i128).sum();
                    x as i64
                })
                .collect()
        };

        let adjacent = self.adjacent_rays(tau);
        let mut rays = Vec::with_capacity(adjacent.len());
        for &g in &adjacent {
            let mut p = project(&self.rays[g].0);
            let c = lattice::content(&p);
            if c > 1 {
                p.iter_mut().for_each(|x| *x /= c);
            }
            rays.push(LatticeVector(p));
        }
        let position: HashMap<usize, usize> =
            adjacent.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let cones = self.containing[tau]
            .iter()
            .map(|&ci| {
                self.maximal_cones[ci]
                    .rays()
                    .iter()
                    .filter(|r| !tau.contains(**r))
                    .map(|r| position[r])
                    .collect()
            })
            .collect();
        let fan = Fan::new(n - k, rays, cones)?;
        Ok(StarFan {
            fan,
            rays: adjacent,
        })
    }

    /// Serialises to the line-oriented fan file format.
    pub fn to_fan_text(&self) -> String {
        self.to_string()
    }
}

/// A star fan together with its ray correspondence: star ray `j` is the
/// image of ambient ray `rays[j]`.
#[derive(Debug, Clone)]
pub struct StarFan {
    pub fan: Fan,
    pub rays: Vec<usize>,
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim)?;
        writeln!(f, "rays")?;
        for r in &self.rays {
            let parts: Vec<String> = r.0.iter().map(i64::to_string).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        writeln!(f, "cones")?;
        for c in &self.maximal_cones {
            let parts: Vec<String> = c.rays().iter().map(usize::to_string).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> ToricError {
    ToricError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

/// Parses the fan file format:
///
/// ```text
/// dim <n>
/// rays
/// <n integers per line>
/// cones
/// <n zero-based ray indices per line>
/// ```
///
/// `#` starts a comment; blank lines are ignored.
pub fn parse_fan(text: &str) -> Result<Fan> {
    enum Section {
        Header,
        RaysKeyword,
        Rays,
        Cones,
    }
    let mut section = Section::Header;
    let mut dim = 0usize;
    let mut rays = Vec::new();
    let mut cones = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col, head)) = toks.first() else {
            continue;
        };
        match section {
            Section::Header => {
                if head != "dim" {
                    return Err(parse_error(
                        line_no,
                        col,
                        format!("expected `dim`, found `{head}`"),
                    ));
                }
                let Some(&(c, value)) = toks.get(1) else {
                    return Err(parse_error(
                        line_no,
                        content.chars().count() + 1,
                        "missing dimension",
                    ));
                };
                dim = value
                    .parse::<usize>()
                    .ok()
                    .filter(|&d| d > 0)
                    .ok_or_else(|| {
                        parse_error(line_no, c, format!("invalid dimension `{value}`"))
                    })?;
                if let Some(&(c, extra)) = toks.get(2) {
                    return Err(parse_error(line_no, c, format!("unexpected `{extra}`")));
                }
                section = Section::RaysKeyword;
            }
            Section::RaysKeyword => {
                if head != "rays" || toks.len() > 1 {
                    let (c, t) = if head != "rays" { (col, head) } else { toks[1] };
                    return Err(parse_error(
                        line_no,
                        c,
                        format!("expected `rays`, found `{t}`"),
                    ));
                }
                section = Section::Rays;
            }
            Section::Rays if head == "cones" => {
                if let Some(&(c, extra)) = toks.get(1) {
                    return Err(parse_error(line_no, c, format!("unexpected `{extra}`")));
                }
                section = Section::Cones;
            }
            Section::Rays => {
                rays.push(LatticeVector(parse_row::<i64>(
                    &toks, dim, line_no, content,
                )?));
            }
            Section::Cones => {
                cones.push(parse_row::<usize>(&toks, dim, line_no, content)?);
            }
        }
    }
    match section {
        Section::Cones => {}
        Section::Header => return Err(parse_error(last_line + 1, 1, "missing `dim` header")),
        Section::RaysKeyword => {
            return Err(parse_error(last_line + 1, 1, "missing `rays` section"))
        }
        Section::Rays => return Err(parse_error(last_line + 1, 1, "missing `cones` section")),
    }
    Fan::new(dim, rays, cones)
}

fn parse_row<T: FromStr>(
    toks: &[(usize, &str)],
    n: usize,
    line: usize,
    content: &str,
) -> Result<Vec<T>> {
    if toks.len() > n {
        let (c, t) = toks[n];
        return Err(parse_error(
            line,
            c,
            format!("unexpected `{t}`: expected {n} entries"),
        ));
    }
    if toks.len() < n {
        return Err(parse_error(
            line,
            content.trim_end().chars().count() + 1,
            format!("expected {n} entries, found {}", toks.len()),
        ));
    }
    toks.iter()
        .map(|&(c, t)| {
            t.parse::<T>()
                .map_err(|_| parse_error(line, c, format!("invalid integer `{t}`")))
        })
        .collect()
}

impl FromStr for Fan {
    type Err = ToricError;

    fn from_str(s: &str) -> Result<Fan> {
        parse_fan(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P2: &str = "# projective plane\ndim 2\nrays\n1 0\n0 1\n-1 -1\ncones\n0 1\n1 2\n2 0\n";

    fn fan(dim: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Result<Fan> {
        Fan::new(
            dim,
            rays.iter()
                .map(|r| LatticeVector::new(r.to_vec()))
                .collect(),
            cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    fn p1xp1() -> Fan {
        fan(
            2,
            &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]],
            &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]],
        )
        .unwrap()
    }

    #[test]
    fn parses_projective_plane() {
        let f = parse_fan(P2).unwrap();
        assert_eq!(f.dim(), 2);
        assert_eq!(f.num_rays(), 3);
        assert_eq!(f.maximal_cones().len(), 3);
        assert_eq!(f.ray(2), &[-1, -1]);
        assert_eq!(parse_fan(&f.to_fan_text()).unwrap(), f);
    }

    #[test]
    fn rejects_non_primitive_ray() {
        let text = "dim 2\nrays\n2 0\n0 1\n-1 -1\ncones\n0 1\n1 2\n2 0\n";
        assert_eq!(
            parse_fan(text).unwrap_err(),
            ToricError::NonPrimitiveRay { index: 0, gcd: 2 }
        );
    }

    #[test]
    fn rejects_unused_ray() {
        let text = "dim 2\nrays\n1 0\n0 1\n-1 -1\ncones\n0 1\n";
        assert_eq!(
            parse_fan(text).unwrap_err(),
            ToricError::UnusedRay { index: 2 }
        );
    }

    #[test]
    fn rejects_structural_errors() {
        assert!(matches!(
            fan(2, &[&[1, 0], &[0, 1]], &[&[0]]),
            Err(ToricError::ConeSize { .. })
        ));
        assert!(matches!(
            fan(2, &[&[1, 0], &[1, 0]], &[&[0, 1]]),
            Err(ToricError::DuplicateRay {
                first: 0,
                second: 1
            })
        ));
        assert!(matches!(
            fan(2, &[&[1, 0], &[0, 1]], &[&[0, 1], &[1, 0]]),
            Err(ToricError::DuplicateCone { .. })
        ));
        assert!(matches!(
            fan(2, &[&[1, 0], &[-1, 0]], &[&[0, 1]]),
            Err(ToricError::DependentCone { .. })
        ));
        assert!(matches!(
            fan(2, &[&[0, 0]], &[]),
            Err(ToricError::ZeroRay { index: 0 })
        ));
        // (1,1) sits inside the cone {(1,0),(0,1)}: both cones on one side of their wall
        assert!(matches!(
            fan(2, &[&[1, 0], &[0, 1], &[1, 1]], &[&[0, 1], &[0, 2]]),
            Err(ToricError::FanCondition { .. })
        ));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse_fan("dim 2\nrays\n1 x\n").unwrap_err();
        assert_eq!(
            e,
            ToricError::Parse {
                line: 3,
                column: 3,
                message: "invalid integer `x`".into()
            }
        );
        let e = parse_fan("dim 2\nrays\n1 0 4\n").unwrap_err();
        assert!(matches!(
            e,
            ToricError::Parse {
                line: 3,
                column: 5,
                ..
            }
        ));
        let e = parse_fan("dimension 2\n").unwrap_err();
        assert!(matches!(
            e,
            ToricError::Parse {
                line: 1,
                column: 1,
                ..
            }
        ));
        let e = parse_fan("dim 2\nrays\n1 0\n").unwrap_err();
        assert!(matches!(e, ToricError::Parse { line: 4, .. }));
        let e = parse_fan("  dim 0").unwrap_err();
        assert!(matches!(
            e,
            ToricError::Parse {
                line: 1,
                column: 7,
                ..
            }
        ));
    }

    #[test]
    fn smoothness() {
        assert!(parse_fan(P2).unwrap().is_smooth().holds());
        assert!(p1xp1().is_smooth().holds());
        let singular = fan(
            2,
            &[&[1, 0], &[1, 2], &[-1, -1]],
            &[&[0, 1], &[1, 2], &[2, 0]],
        )
        .unwrap();
        assert_eq!(
            singular.is_smooth(),
            Smoothness::Singular {
                cone: Cone::new([0, 1]),
                determinant: 2
            }
        );
    }

    #[test]
    fn completeness() {
        let p1 = fan(1, &[&[1], &[-1]], &[&[0], &[1]]).unwrap();
        assert!(p1.is_complete().holds());
        let quadrant = fan(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]).unwrap();
        assert!(matches!(
            quadrant.is_complete(),
            Completeness::BadWall { cones: 1, .. }
        ));
        let p3 = fan(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]],
            &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
        )
        .unwrap();
        assert!(p3.is_complete().holds());
        assert_eq!(p3.enumerate_faces(2).unwrap().len(), 6);
        for wall in p3.enumerate_faces(2).unwrap() {
            assert_eq!(p3.maximal_cones_containing(wall).len(), 2);
        }
    }

    #[test]
    fn double_cover_is_caught_by_sweep() {
        // six smooth cones winding twice around the origin; every wall is
        // locally fine so only the sweep sees the overlap
        let f = fan(
            2,
            &[&[1, 0], &[-1, 1], &[0, -1], &[1, 1], &[-1, 0], &[1, -1]],
            &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 0]],
        )
        .unwrap();
        assert!(f.is_smooth().holds());
        assert!(matches!(f.is_complete(), Completeness::Overlap { .. }));
    }

    #[test]
    fn face_enumeration() {
        let p2 = parse_fan(P2).unwrap();
        assert_eq!(p2.enumerate_faces(0).unwrap(), &[Cone::origin()]);
        assert_eq!(p2.enumerate_faces(1).unwrap().len(), 3);
        assert_eq!(p2.enumerate_faces(2).unwrap(), p2.maximal_cones());
        assert!(p2.enumerate_faces(3).is_err());
        let q = p1xp1();
        assert_eq!(q.enumerate_faces(2).unwrap().len(), 4);
        assert!(q.spans_cone(&[0, 1]).is_none());
        assert_eq!(q.spans_cone(&[2, 0]), Some(Cone::new([0, 2])));
        assert_eq!(q.spans_cone(&[]), Some(Cone::origin()));
    }

    #[test]
    fn star_of_a_ray_in_p2_is_p1() {
        let p2 = parse_fan(P2).unwrap();
        let star = p2.star_fan(&Cone::ray(0)).unwrap();
        assert_eq!(star.fan.dim(), 1);
        assert_eq!(star.rays, vec![1, 2]);
        let mut rays: Vec<i64> = star.fan.rays().iter().map(|r| r.0[0]).collect();
        rays.sort();
        assert_eq!(rays, vec![-1, 1]);
        assert_eq!(star.fan.ray(0), &[-star.fan.ray(1)[0]]);
        assert!(star.fan.is_smooth().holds());
        assert!(star.fan.is_complete().holds());
    }

    #[test]
    fn star_of_origin_and_of_maximal_cone() {
        let q = p1xp1();
        let s = q.star_fan(&Cone::origin()).unwrap();
        assert_eq!(s.fan, q);
        assert_eq!(s.rays, vec![0, 1, 2, 3]);
        let pt = q.star_fan(&Cone::new([0, 2])).unwrap();
        assert_eq!(pt.fan.dim(), 0);
        assert!(pt.rays.is_empty());
        assert!(q.star_fan(&Cone::new([0, 1])).is_err());
    }
}
