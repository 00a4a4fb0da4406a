//! Verification logic over the incidence graph of a plane.
//!
//! The incidence graph is bipartite on points and lines; distances are 0
//! (equal), 2 (distinct objects of one class), and 1/3 (point on / off a
//! line). A mixed set resolves the graph iff the four counting properties
//! checked by [`is_resolving`] hold; [`is_resolving_naive`] exists as an
//! independent oracle that materializes the distance lists and never shares
//! code with the criterion path.
//!
//! Verifiers return the violating witnesses, not just a boolean: searches
//! prune on them and generators debug through them.

use crate::plane::Plane;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResolveError {
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
}

/// A vertex of the incidence graph.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(tag = "class", content = "index", rename_all = "snake_case")]
pub enum Vertex {
    Point(u32),
    Line(u32),
}

/// A candidate resolving set: point indices plus line indices, both sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct MixedSet {
    pub points: Vec<u32>,
    pub lines: Vec<u32>,
}

impl MixedSet {
    pub fn new(mut points: Vec<u32>, mut lines: Vec<u32>) -> MixedSet {
        points.sort_unstable();
        points.dedup();
        lines.sort_unstable();
        lines.dedup();
        MixedSet { points, lines }
    }

    pub fn len(&self) -> usize {
        self.points.len() + self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.lines.is_empty()
    }

    /// Interchange the two classes (valid because points and lines share the
    /// index scheme).
    pub fn dual(&self) -> MixedSet {
        MixedSet {
            points: self.lines.clone(),
            lines: self.points.clone(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Two outer lines skew to the point part.
    SkewLinePair { lines: [u32; 2] },
    /// Two outer tangents through one inner point.
    TangentPairThroughInnerPoint { point: u32, lines: [u32; 2] },
    /// Two outer points covered by no line of the line part.
    UncoveredPointPair { points: [u32; 2] },
    /// Two outer 1-covered points on one inner line.
    OneCoveredPairOnInnerLine { line: u32, points: [u32; 2] },
    /// Two vertices with identical distance lists (naive checker only).
    DuplicateDistanceLists { a: Vertex, b: Vertex },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::SkewLinePair { .. } => "skew_line_pair",
            Violation::TangentPairThroughInnerPoint { .. } => "tangent_pair_through_inner_point",
            Violation::UncoveredPointPair { .. } => "uncovered_point_pair",
            Violation::OneCoveredPairOnInnerLine { .. } => "one_covered_pair_on_inner_line",
            Violation::DuplicateDistanceLists { .. } => "duplicate_distance_lists",
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ReportStats {
    pub n_points: u64,
    pub n_lines: u64,
    pub size: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    pub stats: ReportStats,
}

impl VerifyReport {
    fn new(violations: Vec<Violation>, stats: ReportStats) -> VerifyReport {
        VerifyReport {
            ok: violations.is_empty(),
            violations,
            stats,
        }
    }
}

/// Distance in the incidence graph: 0, 1, 2 or 3.
pub fn distance(plane: &Plane, a: Vertex, b: Vertex) -> u8 {
    match (a, b) {
        (Vertex::Point(p), Vertex::Point(r)) => {
            if p == r {
                0
            } else {
                2
            }
        }
        (Vertex::Line(l), Vertex::Line(m)) => {
            if l == m {
                0
            } else {
                2
            }
        }
        (Vertex::Point(p), Vertex::Line(l)) | (Vertex::Line(l), Vertex::Point(p)) => {
            if plane.incident(p, l) {
                1
            } else {
                3
            }
        }
    }
}

/// Per-line count of chosen points (an i-secant has count i).
pub fn secant_counts(plane: &Plane, points: &[u32]) -> Vec<u16> {
    let mut sc = vec![0u16; plane.n_points() as usize];
    for &p in points {
        for &l in plane.lines_through(p) {
            sc[l as usize] += 1;
        }
    }
    sc
}

/// Per-point count of chosen lines through it.
pub fn cover_counts(plane: &Plane, lines: &[u32]) -> Vec<u16> {
    let mut cc = vec![0u16; plane.n_points() as usize];
    for &l in lines {
        for &p in plane.points_on(l) {
            cc[p as usize] += 1;
        }
    }
    cc
}

fn membership(n: u32, items: &[u32]) -> Vec<bool> {
    let mut m = vec![false; n as usize];
    for &i in items {
        m[i as usize] = true;
    }
    m
}

/// Criterion-based resolving-set check: at most one outer skew line, at most
/// one outer tangent through each inner point, and the two dual conditions.
/// Agrees with [`is_resolving_naive`] on every input.
pub fn is_resolving(plane: &Plane, set: &MixedSet) -> VerifyReport {
    let n = plane.n_points();
    let sc = secant_counts(plane, &set.points);
    let cc = cover_counts(plane, &set.lines);
    let in_pt = membership(n, &set.points);
    let in_ln = membership(n, &set.lines);
    let mut violations = Vec::new();

    // at most one outer line skew to the point part
    let mut first_skew: Option<u32> = None;
    for l in 0..n {
        if sc[l as usize] == 0 && !in_ln[l as usize] {
            match first_skew {
                None => first_skew = Some(l),
                Some(f) => violations.push(Violation::SkewLinePair { lines: [f, l] }),
            }
        }
    }

    // through every inner point at most one outer tangent
    for &p in &set.points {
        let mut first: Option<u32> = None;
        for &l in plane.lines_through(p) {
            if sc[l as usize] == 1 && !in_ln[l as usize] {
                match first {
                    None => first = Some(l),
                    Some(f) => violations.push(Violation::TangentPairThroughInnerPoint {
                        point: p,
                        lines: [f, l],
                    }),
                }
            }
        }
    }

    // at most one outer point not covered by the line part
    let mut first_uncov: Option<u32> = None;
    for p in 0..n {
        if cc[p as usize] == 0 && !in_pt[p as usize] {
            match first_uncov {
                None => first_uncov = Some(p),
                Some(f) => violations.push(Violation::UncoveredPointPair { points: [f, p] }),
            }
        }
    }

    // on every inner line at most one outer 1-covered point
    for &l in &set.lines {
        let mut first: Option<u32> = None;
        for &p in plane.points_on(l) {
            if cc[p as usize] == 1 && !in_pt[p as usize] {
                match first {
                    None => first = Some(p),
                    Some(f) => violations.push(Violation::OneCoveredPairOnInnerLine {
                        line: l,
                        points: [f, p],
                    }),
                }
            }
        }
    }

    let stats = ReportStats {
        n_points: set.points.len() as u64,
        n_lines: set.lines.len() as u64,
        size: set.len() as u64,
        t: None,
        beta: None,
    };
    VerifyReport::new(violations, stats)
}

/// Oracle: materialize all 2(q^2+q+1) distance lists and look for a
/// duplicate. Exists only to cross-check [`is_resolving`].
pub fn is_resolving_naive(plane: &Plane, set: &MixedSet) -> VerifyReport {
    let n = plane.n_points();
    let mut seen: std::collections::HashMap<Vec<u8>, Vertex> = std::collections::HashMap::new();
    let mut violations = Vec::new();
    let vertices = (0..n).map(Vertex::Point).chain((0..n).map(Vertex::Line));
    for v in vertices {
        let mut list = Vec::with_capacity(set.len());
        for &p in &set.points {
            list.push(distance(plane, v, Vertex::Point(p)));
        }
        for &l in &set.lines {
            list.push(distance(plane, v, Vertex::Line(l)));
        }
        if let Some(&other) = seen.get(&list) {
            violations.push(Violation::DuplicateDistanceLists { a: other, b: v });
            break;
        }
        seen.insert(list, v);
    }
    let stats = ReportStats {
        n_points: set.points.len() as u64,
        n_lines: set.lines.len() as u64,
        size: set.len() as u64,
        t: None,
        beta: None,
    };
    VerifyReport::new(violations, stats)
}

/// Semi-resolving check for a point set (the lines of the plane get distinct
/// distance lists): at most one skew line overall, and at most one tangent
/// through each point of the set.
pub fn is_semi_resolving(plane: &Plane, points: &[u32]) -> VerifyReport {
    let n = plane.n_points();
    let sc = secant_counts(plane, points);
    let mut violations = Vec::new();
    let mut first_skew: Option<u32> = None;
    let mut n0 = 0u64;
    let mut n1 = 0u64;
    for l in 0..n {
        match sc[l as usize] {
            0 => {
                n0 += 1;
                match first_skew {
                    None => first_skew = Some(l),
                    Some(f) => violations.push(Violation::SkewLinePair { lines: [f, l] }),
                }
            }
            1 => n1 += 1,
            _ => {}
        }
    }
    for &p in points {
        let mut first: Option<u32> = None;
        for &l in plane.lines_through(p) {
            if sc[l as usize] == 1 {
                match first {
                    None => first = Some(l),
                    Some(f) => violations.push(Violation::TangentPairThroughInnerPoint {
                        point: p,
                        lines: [f, l],
                    }),
                }
            }
        }
    }
    let q = plane.q() as i64;
    let stats = ReportStats {
        n_points: points.len() as u64,
        n_lines: 0,
        size: points.len() as u64,
        t: Some(n1 + 2 * n0),
        beta: Some(points.len() as i64 - 2 * q),
    };
    VerifyReport::new(violations, stats)
}

/// Split check: the point part must semi-resolve the lines and the line part
/// must semi-resolve the points (the dual condition).
pub fn is_split_resolving(plane: &Plane, points: &[u32], lines: &[u32]) -> VerifyReport {
    let mut report = is_semi_resolving(plane, points);
    let n = plane.n_points();
    let cc = cover_counts(plane, lines);
    let mut first_uncov: Option<u32> = None;
    for p in 0..n {
        if cc[p as usize] == 0 {
            match first_uncov {
                None => first_uncov = Some(p),
                Some(f) => report
                    .violations
                    .push(Violation::UncoveredPointPair { points: [f, p] }),
            }
        }
    }
    for &l in lines {
        let mut first: Option<u32> = None;
        for &p in plane.points_on(l) {
            if cc[p as usize] == 1 {
                match first {
                    None => first = Some(p),
                    Some(f) => report
                        .violations
                        .push(Violation::OneCoveredPairOnInnerLine {
                            line: l,
                            points: [f, p],
                        }),
                }
            }
        }
    }
    report.ok = report.violations.is_empty();
    report.stats.n_lines = lines.len() as u64;
    report.stats.size = (points.len() + lines.len()) as u64;
    report
}

/// Histogram of i-secants to a point set, plus the blocking predicates.
#[derive(Clone, Debug, Serialize)]
pub struct SecantProfile {
    /// histogram[i] = number of i-secant lines
    pub histogram: Vec<u64>,
    pub is_blocking: bool,
    pub is_double_blocking: bool,
}

pub fn secant_profile(plane: &Plane, points: &[u32]) -> SecantProfile {
    let sc = secant_counts(plane, points);
    let mut histogram = vec![0u64; plane.q() as usize + 2];
    for &c in &sc {
        histogram[c as usize] += 1;
    }
    SecantProfile {
        is_blocking: histogram[0] == 0,
        is_double_blocking: histogram[0] == 0 && histogram[1] == 0,
        histogram,
    }
}

/// Per-point skew/tangent counts relative to a point set.
///
/// `ind = 2*ind0 + ind1` where ind0/ind1 count the skew lines and tangents
/// through the point; `t = n1 + 2*n0` is the global tangent count plus twice
/// the skew count, and `beta = |S| - 2q`.
#[derive(Clone, Debug)]
pub struct IndexReport {
    pub ind0: Vec<u16>,
    pub ind1: Vec<u16>,
    pub ind: Vec<u32>,
    pub t: u64,
    pub beta: i64,
    pub line_secants: Vec<u16>,
}

pub fn point_index(plane: &Plane, points: &[u32]) -> IndexReport {
    let n = plane.n_points() as usize;
    let sc = secant_counts(plane, points);
    let mut ind0 = vec![0u16; n];
    let mut ind1 = vec![0u16; n];
    let mut n0 = 0u64;
    let mut n1 = 0u64;
    for &c in sc.iter() {
        match c {
            0 => n0 += 1,
            1 => n1 += 1,
            _ => {}
        }
    }
    for p in 0..n {
        for &l in plane.lines_through(p as u32) {
            match sc[l as usize] {
                0 => ind0[p] += 1,
                1 => ind1[p] += 1,
                _ => {}
            }
        }
    }
    let ind = (0..n)
        .map(|p| 2 * ind0[p] as u32 + ind1[p] as u32)
        .collect();
    IndexReport {
        ind0,
        ind1,
        ind,
        t: n1 + 2 * n0,
        beta: points.len() as i64 - 2 * plane.q() as i64,
        line_secants: sc,
    }
}

/// One evaluated point of [`quadratic_index_check`].
#[derive(Clone, Debug, Serialize)]
pub struct IndexIneqPoint {
    pub point: u32,
    pub ind: u32,
    /// ind^2 - (q - beta) ind + t
    pub with_t: i64,
    /// ind^2 - (q - beta) ind + 2q + beta
    pub general: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexIneqReport {
    pub t: u64,
    pub beta: i64,
    pub evaluated: Vec<IndexIneqPoint>,
    /// both quadratics nonnegative at every eligible point
    pub all_hold: bool,
    /// when 4*beta <= q - 10: points off the set violating
    /// "ind <= 2 or ind >= q - beta - 2" (must be empty)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dichotomy_exceptions: Option<Vec<u32>>,
}

/// Evaluate, for a semi-resolving point set with beta <= 2q-4, the two
/// quadratic index inequalities at every point off the set with
/// ind <= q - 2. Both must hold for valid inputs; a negative value signals
/// an implementation bug, not a property of the set.
pub fn quadratic_index_check(
    plane: &Plane,
    points: &[u32],
) -> Result<IndexIneqReport, ResolveError> {
    let semi = is_semi_resolving(plane, points);
    if !semi.ok {
        return Err(ResolveError::PreconditionUnmet(
            "set is not semi-resolving".into(),
        ));
    }
    let q = plane.q() as i64;
    let report = point_index(plane, points);
    let beta = report.beta;
    if beta > 2 * q - 4 {
        return Err(ResolveError::PreconditionUnmet(format!(
            "beta = {} exceeds 2q - 4 = {}",
            beta,
            2 * q - 4
        )));
    }
    let member = membership(plane.n_points(), points);
    let mut evaluated = Vec::new();
    let mut all_hold = true;
    for p in 0..plane.n_points() {
        if member[p as usize] {
            continue;
        }
        let ind = report.ind[p as usize] as i64;
        if ind > q - 2 {
            continue;
        }
        let base = ind * ind - (q - beta) * ind;
        let with_t = base + report.t as i64;
        let general = base + 2 * q + beta;
        all_hold &= with_t >= 0 && general >= 0;
        evaluated.push(IndexIneqPoint {
            point: p,
            ind: ind as u32,
            with_t,
            general,
        });
    }
    // the index dichotomy applies under the stronger bound 4*beta <= q - 10
    let dichotomy_exceptions = if 4 * beta <= q - 10 {
        let mut exceptions = Vec::new();
        for p in 0..plane.n_points() {
            if member[p as usize] {
                continue;
            }
            let ind = report.ind[p as usize] as i64;
            if !(ind <= 2 || ind >= q - beta - 2) {
                exceptions.push(p);
            }
        }
        Some(exceptions)
    } else {
        None
    };
    Ok(IndexIneqReport {
        t: report.t,
        beta,
        evaluated,
        all_hold,
        dichotomy_exceptions,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SemiovalReport {
    pub is_semioval: bool,
    pub is_blocking_semioval: bool,
    /// |S| minus the ceiling of 9q/4 - 3
    pub bound_margin: i64,
}

/// A semioval has exactly one tangent through each of its points; a blocking
/// semioval additionally meets every line.
pub fn semioval_check(plane: &Plane, points: &[u32]) -> SemiovalReport {
    let sc = secant_counts(plane, points);
    let mut is_semioval = !points.is_empty();
    for &p in points {
        let tangents = plane
            .lines_through(p)
            .iter()
            .filter(|&&l| sc[l as usize] == 1)
            .count();
        if tangents != 1 {
            is_semioval = false;
            break;
        }
    }
    let profile = secant_profile(plane, points);
    let q = plane.q() as i64;
    // ceil(9q/4 - 3) = floor((9q - 9) / 4) for integer q
    let bound = (9 * q - 9).div_euclid(4);
    SemiovalReport {
        is_semioval,
        is_blocking_semioval: is_semioval && profile.is_blocking,
        bound_margin: points.len() as i64 - bound,
    }
}

/// Distance lists of all lines w.r.t. a point set are pairwise distinct.
/// Independent oracle for [`is_semi_resolving`].
pub fn semi_resolving_naive(plane: &Plane, points: &[u32]) -> bool {
    let n = plane.n_points();
    let mut seen = std::collections::HashSet::new();
    for l in 0..n {
        let list: Vec<u8> = points
            .iter()
            .map(|&p| distance(plane, Vertex::Line(l), Vertex::Point(p)))
            .collect();
        if !seen.insert(list) {
            return false;
        }
    }
    true
}

/// Distance lists of all points w.r.t. a line set are pairwise distinct.
pub fn lines_resolve_points_naive(plane: &Plane, lines: &[u32]) -> bool {
    let n = plane.n_points();
    let mut seen = std::collections::HashSet::new();
    for p in 0..n {
        let list: Vec<u8> = lines
            .iter()
            .map(|&l| distance(plane, Vertex::Point(p), Vertex::Line(l)))
            .collect();
        if !seen.insert(list) {
            return false;
        }
    }
    true
}
