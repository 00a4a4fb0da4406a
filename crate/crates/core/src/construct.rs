//! Generators for the explicit constructions: small resolving sets, their
//! 32-way completion catalogue, hyperovals, Baer subplanes, vertexless
//! triangles and double-blocking-set derived semi-resolving sets.
//!
//! Every generator verifies its own output through [`crate::resolve`] before
//! returning it; a generator never hands back an unverified set.

use crate::galois::Fe;
use crate::plane::{Plane, PlaneError};
use crate::resolve::{self, is_resolving, is_semi_resolving, secant_profile, MixedSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("points are collinear")]
    CollinearPoints,
    #[error("plane order {0} is too small for this construction")]
    OrderTooSmall(u64),
    #[error("construction requires a plane of order {expected}, got {got}")]
    WrongOrder { expected: u64, got: u64 },
    #[error("construction requires even order")]
    OddOrder,
    #[error("order is not a square")]
    NotASquare,
    #[error("no parameter assignment satisfies the side condition of C{0}")]
    SideConditionInfeasible(u8),
    #[error("completion id {0} is out of range 1..=32")]
    InvalidId(u8),
    #[error("input is not a double blocking set")]
    NotDoubleBlocking,
    #[error("inputs are not a pair of disjoint blocking sets")]
    NotDisjointBlockingPair,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error("generated set failed verification")]
    VerificationFailed,
}

/// The refined two-line construction: points of PQ and PR without the three
/// chosen points, lines through P and R without the three joining lines.
/// Size 4q-4, resolving for q >= 3.
pub fn canonical_4q4(plane: &Plane, p: u32, q_pt: u32, r: u32) -> Result<MixedSet, ConstructError> {
    let q = plane.q();
    if q < 3 {
        return Err(ConstructError::OrderTooSmall(q));
    }
    if p == q_pt || p == r || q_pt == r {
        return Err(ConstructError::CollinearPoints);
    }
    let pq = plane.line_through(p, q_pt)?;
    let pr = plane.line_through(p, r)?;
    let rq = plane.line_through(r, q_pt)?;
    if plane.incident(r, pq) {
        return Err(ConstructError::CollinearPoints);
    }
    let points: Vec<u32> = plane
        .points_on(pq)
        .iter()
        .chain(plane.points_on(pr))
        .copied()
        .filter(|&x| x != p && x != q_pt && x != r)
        .collect();
    let lines: Vec<u32> = plane
        .lines_through(p)
        .iter()
        .chain(plane.lines_through(r))
        .copied()
        .filter(|&l| l != pq && l != pr && l != rq)
        .collect();
    let set = MixedSet::new(points, lines);
    if set.len() != (4 * q - 4) as usize || !is_resolving(plane, &set).ok {
        return Err(ConstructError::VerificationFailed);
    }
    Ok(set)
}

/// Default general-position triple for [`canonical_4q4`]: points 0, 1 and
/// the smallest point off their joining line.
pub fn default_triangle(plane: &Plane) -> (u32, u32, u32) {
    let l = plane.line_through(0, 1).unwrap();
    let r = (0..plane.n_points())
        .find(|&x| !plane.incident(x, l))
        .expect("a projective plane has a point off any line");
    (0, 1, r)
}

/// The size-five resolving set of the Fano plane: the vertices of the
/// fundamental triangle plus two of its medians.
pub fn fano_resolving5(plane: &Plane) -> Result<MixedSet, ConstructError> {
    if plane.q() != 2 {
        return Err(ConstructError::WrongOrder {
            expected: 2,
            got: plane.q(),
        });
    }
    let f = plane.field().clone();
    let one = f.one();
    let a = plane.point_index([one, Fe(0), Fe(0)]);
    let b = plane.point_index([Fe(0), one, Fe(0)]);
    let c = plane.point_index([Fe(0), Fe(0), one]);
    let mid_bc = plane.point_index([Fe(0), one, one]);
    let mid_ac = plane.point_index([one, Fe(0), one]);
    let m_a = plane.line_through(a, mid_bc)?;
    let m_b = plane.line_through(b, mid_ac)?;
    let set = MixedSet::new(vec![a, b, c], vec![m_a, m_b]);
    if !is_resolving(plane, &set).ok {
        return Err(ConstructError::VerificationFailed);
    }
    Ok(set)
}

/// For even q: the conic xz = y^2 plus its nucleus (0:1:0), a (q+2)-arc
/// without tangent lines.
pub fn hyperoval(plane: &Plane) -> Result<Vec<u32>, ConstructError> {
    let q = plane.q();
    if q % 2 != 0 {
        return Err(ConstructError::OddOrder);
    }
    let f = plane.field().clone();
    let mut pts: Vec<u32> = f
        .elements()
        .map(|t| plane.point_index([f.mul(t, t), t, f.one()]))
        .collect();
    pts.push(plane.point_index([f.one(), Fe(0), Fe(0)]));
    pts.push(plane.point_index([Fe(0), f.one(), Fe(0)]));
    pts.sort_unstable();
    let prof = secant_profile(plane, &pts);
    let only_0_2 = prof
        .histogram
        .iter()
        .enumerate()
        .all(|(i, &c)| c == 0 || i == 0 || i == 2);
    if pts.len() != (q + 2) as usize || !only_0_2 {
        return Err(ConstructError::VerificationFailed);
    }
    Ok(pts)
}

/// The size-ten resolving set of PG(2,4): a hyperoval minus a point together
/// with its dual hyperoval of skew lines minus a line.
pub fn hyperoval_resolving10(plane: &Plane) -> Result<MixedSet, ConstructError> {
    if plane.q() != 4 {
        return Err(ConstructError::WrongOrder {
            expected: 4,
            got: plane.q(),
        });
    }
    let oval = hyperoval(plane)?;
    let sc = resolve::secant_counts(plane, &oval);
    let skew: Vec<u32> = (0..plane.n_points())
        .filter(|&l| sc[l as usize] == 0)
        .collect();
    debug_assert_eq!(skew.len(), 6);
    let points: Vec<u32> = oval[1..].to_vec();
    let lines: Vec<u32> = skew[1..].to_vec();
    let set = MixedSet::new(points, lines);
    if set.len() != 10 || !is_resolving(plane, &set).ok {
        return Err(ConstructError::VerificationFailed);
    }
    Ok(set)
}

// ---------------------------------------------------------------------------
// The 4q-6 frame and its 32 completions.
// ---------------------------------------------------------------------------

/// Optional pins for the frame and completion parameters; everything left
/// `None` is solved deterministically (smallest feasible index).
#[derive(Clone, Debug, Default)]
pub struct SStarParams {
    pub e: Option<u32>,
    pub f: Option<u32>,
    pub r: Option<u32>,
    pub r_prime: Option<u32>,
    pub q_point: Option<u32>,
    pub l0: Option<u32>,
    pub l1: Option<u32>,
    pub u: Option<u32>,
    pub v: Option<u32>,
    pub z: Option<u32>,
}

/// The size 4q-6 structure contained in every resolving set of size 4q-4
/// (with the point part not larger than the line part): two lines e, f
/// carrying q-2 and q-1 chosen points, q-2 chosen lines through P = e ∩ f
/// and q-1 chosen lines through R on e.
#[derive(Clone, Debug)]
pub struct SStarFrame {
    pub e: u32,
    pub f: u32,
    pub p: u32,
    pub r: u32,
    pub r_prime: u32,
    pub q_point: u32,
    pub l0: u32,
    pub l1: u32,
    /// f ∩ l1 when Q is not on l1
    pub t: Option<u32>,
    pub points: Vec<u32>,
    pub lines: Vec<u32>,
}

fn build_frame(
    plane: &Plane,
    e: u32,
    f: u32,
    r: u32,
    r_prime: u32,
    q_point: u32,
    l0: u32,
    l1: u32,
) -> Result<SStarFrame, ConstructError> {
    let p = plane.meet(e, f)?;
    let bad = |m: &str| Err(ConstructError::InvalidParams(m.into()));
    if r == p || r_prime == p || r == r_prime {
        return bad("R, R' must be distinct points of e other than P");
    }
    if !plane.incident(r, e) || !plane.incident(r_prime, e) {
        return bad("R, R' must lie on e");
    }
    if q_point == p || !plane.incident(q_point, f) {
        return bad("Q must lie on f, distinct from P");
    }
    if l0 == e || l0 == f || !plane.incident(p, l0) {
        return bad("l0 must pass through P, distinct from e and f");
    }
    if l1 == e || !plane.incident(r, l1) {
        return bad("l1 must pass through R, distinct from e");
    }
    let points: Vec<u32> = plane
        .points_on(e)
        .iter()
        .copied()
        .filter(|&x| x != p && x != r && x != r_prime)
        .chain(
            plane
                .points_on(f)
                .iter()
                .copied()
                .filter(|&x| x != p && x != q_point),
        )
        .collect();
    let lines: Vec<u32> = plane
        .lines_through(p)
        .iter()
        .copied()
        .filter(|&l| l != e && l != f && l != l0)
        .chain(
            plane
                .lines_through(r)
                .iter()
                .copied()
                .filter(|&l| l != e && l != l1),
        )
        .collect();
    let t = if plane.incident(q_point, l1) {
        None
    } else {
        Some(plane.meet(f, l1)?)
    };
    let mut points = points;
    let mut lines = lines;
    points.sort_unstable();
    lines.sort_unstable();
    Ok(SStarFrame {
        e,
        f,
        p,
        r,
        r_prime,
        q_point,
        l0,
        l1,
        t,
        points,
        lines,
    })
}

/// Build the frame with unpinned parameters solved to smallest indices; the
/// relation of Q to l1 is unconstrained here.
pub fn s_star(plane: &Plane, params: &SStarParams) -> Result<SStarFrame, ConstructError> {
    let e = params.e.unwrap_or(0);
    let f = params.f.unwrap_or_else(|| if e == 0 { 1 } else { 0 });
    if e == f {
        return Err(ConstructError::InvalidParams("e and f must differ".into()));
    }
    let p = plane.meet(e, f)?;
    let mut on_e = plane.points_on(e).iter().copied().filter(|&x| x != p);
    let r = match params.r {
        Some(r) => r,
        None => on_e.next().unwrap(),
    };
    let r_prime = match params.r_prime {
        Some(rp) => rp,
        None => plane
            .points_on(e)
            .iter()
            .copied()
            .find(|&x| x != p && x != r)
            .unwrap(),
    };
    let q_point = match params.q_point {
        Some(qp) => qp,
        None => plane
            .points_on(f)
            .iter()
            .copied()
            .find(|&x| x != p)
            .unwrap(),
    };
    let l0 = match params.l0 {
        Some(l0) => l0,
        None => plane
            .lines_through(p)
            .iter()
            .copied()
            .find(|&l| l != e && l != f)
            .unwrap(),
    };
    let l1 = match params.l1 {
        Some(l1) => l1,
        None => plane
            .lines_through(r)
            .iter()
            .copied()
            .find(|&l| l != e)
            .unwrap(),
    };
    build_frame(plane, e, f, r, r_prime, q_point, l0, l1)
}

/// A completed size 4q-4 resolving set: the frame plus the two added
/// objects of completion `id`.
#[derive(Clone, Debug)]
pub struct Completion {
    pub id: u8,
    pub frame: SStarFrame,
    pub added_points: Vec<u32>,
    pub added_lines: Vec<u32>,
    pub set: MixedSet,
    /// full parameter assignment, for certificates
    pub params: Vec<(&'static str, u32)>,
}

/// Whether a completion requires Q on l1, off l1, or either.
fn q_on_l1_requirement(id: u8) -> Option<bool> {
    match id {
        1..=4 => None,
        5 | 6 => Some(true),
        _ => Some(false),
    }
}

struct Ctx<'a> {
    plane: &'a Plane,
    e: u32,
    f: u32,
    p: u32,
    r: u32,
    rp: u32,
    q_pt: u32,
    l0: u32,
    l1: u32,
    /// R'Q
    rpq: u32,
    /// T = f ∩ l1 and R'T (only when Q is off l1)
    t: Option<u32>,
    rpt: Option<u32>,
    /// l0 ∩ l1, l0 ∩ RQ
    x: u32,
    y: u32,
}

impl<'a> Ctx<'a> {
    fn new(plane: &'a Plane, fr: &SStarFrame) -> Result<Ctx<'a>, ConstructError> {
        let rq = plane.line_through(fr.r, fr.q_point)?;
        let rpq = plane.line_through(fr.r_prime, fr.q_point)?;
        let rpt = match fr.t {
            Some(t) => Some(plane.line_through(fr.r_prime, t)?),
            None => None,
        };
        Ok(Ctx {
            plane,
            e: fr.e,
            f: fr.f,
            p: fr.p,
            r: fr.r,
            rp: fr.r_prime,
            q_pt: fr.q_point,
            l0: fr.l0,
            l1: fr.l1,
            rpq,
            t: fr.t,
            rpt,
            x: plane.meet(fr.l0, fr.l1)?,
            y: plane.meet(fr.l0, rq)?,
        })
    }

    fn on(&self, point: u32, line: u32) -> bool {
        self.plane.incident(point, line)
    }

    /// Points of `e` that carry the frame (everything except P, R, R').
    fn u_candidates(&self, pin: Option<u32>) -> Vec<u32> {
        self.plane
            .points_on(self.e)
            .iter()
            .copied()
            .filter(|&u| u != self.p && u != self.r && u != self.rp)
            .filter(|&u| pin.map_or(true, |x| x == u))
            .collect()
    }

    /// Points of `f` usable as V: everything except P, Q and T.
    fn v_candidates(&self, pin: Option<u32>) -> Vec<u32> {
        self.plane
            .points_on(self.f)
            .iter()
            .copied()
            .filter(|&v| v != self.p && v != self.q_pt && Some(v) != self.t)
            .filter(|&v| pin.map_or(true, |x| x == v))
            .collect()
    }

    fn z_candidates(&self, line: u32, excl: &[u32], pin: Option<u32>) -> Vec<u32> {
        self.plane
            .points_on(line)
            .iter()
            .copied()
            .filter(|z| !excl.contains(z))
            .filter(|&z| pin.map_or(true, |x| x == z))
            .collect()
    }
}

type Added = (Vec<u32>, Vec<u32>, Vec<(&'static str, u32)>);

/// Try to realize completion `id` on the given frame; side conditions that
/// fail make the frame unusable for this id (the caller scans on).
fn solve_completion(ctx: &Ctx, id: u8, pins: &SStarParams) -> Option<Added> {
    let mut extras: Vec<(&'static str, u32)> = Vec::new();
    let (pts, lns): (Vec<u32>, Vec<u32>) = match id {
        1 => (vec![], vec![ctx.l0, ctx.l1]),
        2 => (vec![], vec![ctx.rpq, ctx.l1]),
        3 => (vec![ctx.q_pt], vec![ctx.l1]),
        4 => (vec![ctx.y], vec![ctx.l1]),
        5 => (vec![ctx.q_pt], vec![ctx.rpq]),
        6 => (vec![ctx.rp], vec![ctx.l0]),
        7 => (vec![], vec![ctx.l0, ctx.rpt?]),
        8 => (vec![], vec![ctx.rpq, ctx.rpt?]),
        9 => (vec![ctx.rp], vec![ctx.f]),
        10 => {
            let u = *ctx.u_candidates(pins.u).first()?;
            extras.push(("u", u));
            let uq = ctx.plane.line_through(u, ctx.q_pt).ok()?;
            (vec![ctx.rp], vec![uq])
        }
        11 => (vec![ctx.rp], vec![ctx.l0]),
        12 => {
            let u = *ctx.u_candidates(pins.u).first()?;
            extras.push(("u", u));
            let uy = ctx.plane.line_through(u, ctx.y).ok()?;
            (vec![ctx.rp], vec![uy])
        }
        13 => {
            // side condition: l0 ∩ RQ on R'T
            if !ctx.on(ctx.y, ctx.rpt?) {
                return None;
            }
            (vec![ctx.y], vec![ctx.e])
        }
        14 => {
            if ctx.on(ctx.x, ctx.rpq) {
                return None;
            }
            (vec![ctx.x], vec![ctx.f])
        }
        15 => {
            let excl = [ctx.t?, ctx.plane.meet(ctx.l0, ctx.rpq).ok()?];
            let z = *ctx.z_candidates(ctx.l1, &excl, pins.z).first()?;
            extras.push(("z", z));
            (vec![z], vec![ctx.l0])
        }
        16 => {
            let rpt = ctx.rpt?;
            let z = *ctx.z_candidates(rpt, &[ctx.rp, ctx.t?], pins.z).first()?;
            extras.push(("z", z));
            (vec![z], vec![ctx.l0])
        }
        17 => {
            if !ctx.on(ctx.y, ctx.rpt?) {
                return None;
            }
            // a line through x meeting e in U and f in V
            let (u, g) = ctx.u_candidates(pins.u).into_iter().find_map(|u| {
                if ctx.on(u, ctx.l0) {
                    return None;
                }
                let g = ctx.plane.line_through(u, ctx.x).ok()?;
                let v = ctx.plane.meet(g, ctx.f).ok()?;
                let v_ok = v != ctx.p && v != ctx.q_pt && Some(v) != ctx.t;
                let v_ok = v_ok && pins.v.map_or(true, |pv| pv == v);
                v_ok.then_some((u, g))
            })?;
            extras.push(("u", u));
            (vec![ctx.y], vec![g])
        }
        18 => {
            if ctx.on(ctx.x, ctx.rpq) {
                return None;
            }
            let (u, g) = ctx.u_candidates(pins.u).into_iter().find_map(|u| {
                if ctx.on(u, ctx.l0) {
                    return None;
                }
                let g = ctx.plane.line_through(u, ctx.y).ok()?;
                let v = ctx.plane.meet(g, ctx.f).ok()?;
                let v_ok = v != ctx.p && v != ctx.q_pt && Some(v) != ctx.t;
                let v_ok = v_ok && pins.v.map_or(true, |pv| pv == v);
                v_ok.then_some((u, g))
            })?;
            extras.push(("u", u));
            (vec![ctx.x], vec![g])
        }
        19 => {
            if ctx.on(ctx.x, ctx.rpq) {
                return None;
            }
            let (u, uq) = ctx.u_candidates(pins.u).into_iter().find_map(|u| {
                let uq = ctx.plane.line_through(u, ctx.q_pt).ok()?;
                (!ctx.on(ctx.x, uq)).then_some((u, uq))
            })?;
            extras.push(("u", u));
            (vec![ctx.x], vec![uq])
        }
        20..=22 => {
            // UQ through l0 ∩ l1
            let g = ctx.plane.line_through(ctx.x, ctx.q_pt).ok()?;
            let u = ctx.plane.meet(g, ctx.e).ok()?;
            if u == ctx.p || u == ctx.r || u == ctx.rp {
                return None;
            }
            if let Some(pu) = pins.u {
                if pu != u {
                    return None;
                }
            }
            extras.push(("u", u));
            let pt = match id {
                20 => {
                    if ctx.on(ctx.x, ctx.rpq) {
                        return None;
                    }
                    ctx.x
                }
                21 => ctx.plane.meet(ctx.l0, ctx.rpt?).ok()?,
                _ => {
                    if ctx.on(ctx.x, ctx.rpq) {
                        return None;
                    }
                    ctx.plane.meet(ctx.l1, ctx.rpq).ok()?
                }
            };
            (vec![pt], vec![g])
        }
        23 => {
            if !ctx.on(ctx.x, ctx.rpq) {
                return None;
            }
            (vec![ctx.x], vec![ctx.rpq])
        }
        24 => {
            if !ctx.on(ctx.y, ctx.rpt?) {
                return None;
            }
            let (v, rv) = ctx.v_candidates(pins.v).into_iter().find_map(|v| {
                let rv = ctx.plane.line_through(ctx.rp, v).ok()?;
                (!ctx.on(ctx.y, rv) && !ctx.on(ctx.x, rv)).then_some((v, rv))
            })?;
            extras.push(("v", v));
            (vec![ctx.y], vec![rv])
        }
        25..=27 => {
            // R'V must pass through l0 ∩ RQ and avoid l0 ∩ l1
            let rv = ctx.plane.line_through(ctx.rp, ctx.y).ok()?;
            if ctx.on(ctx.x, rv) {
                return None;
            }
            let v = ctx.plane.meet(rv, ctx.f).ok()?;
            if v == ctx.p || v == ctx.q_pt || Some(v) == ctx.t {
                return None;
            }
            if let Some(pv) = pins.v {
                if pv != v {
                    return None;
                }
            }
            extras.push(("v", v));
            let pt = match id {
                25 => ctx.plane.meet(ctx.l0, ctx.rpt?).ok()?,
                26 => {
                    if ctx.on(ctx.x, ctx.rpq) {
                        return None;
                    }
                    ctx.x
                }
                _ => {
                    if ctx.on(ctx.x, ctx.rpq) {
                        return None;
                    }
                    ctx.plane.meet(ctx.l1, ctx.rpq).ok()?
                }
            };
            (vec![pt], vec![rv])
        }
        28 => {
            let rpt = ctx.rpt?;
            if ctx.on(ctx.y, rpt) || ctx.on(ctx.x, rpt) {
                return None;
            }
            (vec![ctx.y], vec![rpt])
        }
        29 | 30 => {
            let rpt = ctx.rpt?;
            if !ctx.on(ctx.y, rpt) || ctx.on(ctx.x, rpt) {
                return None;
            }
            let l0_rpq = ctx.plane.meet(ctx.l0, ctx.rpq).ok()?;
            let z = if id == 29 {
                *ctx.z_candidates(ctx.l0, &[l0_rpq], pins.z).first()?
            } else {
                *ctx.z_candidates(ctx.rpq, &[ctx.rp, ctx.q_pt, l0_rpq], pins.z)
                    .first()?
            };
            extras.push(("z", z));
            (vec![z], vec![rpt])
        }
        31 | 32 => {
            if ctx.on(ctx.x, ctx.rpq) {
                return None;
            }
            let z = if id == 31 {
                *ctx.z_candidates(ctx.l1, &[ctx.t?], pins.z).first()?
            } else {
                *ctx.z_candidates(ctx.rpt?, &[ctx.rp, ctx.t?], pins.z)
                    .first()?
            };
            extras.push(("z", z));
            (vec![z], vec![ctx.rpq])
        }
        _ => return None,
    };
    Some((pts, lns, extras))
}

/// Realize completion `id` (1..=32): solve unpinned parameters to the
/// smallest feasible indices, assemble frame + two added objects, and verify
/// the result. Reports [`ConstructError::SideConditionInfeasible`] when no
/// assignment satisfies the id's incidence conditions on this plane.
pub fn construction_c(
    plane: &Plane,
    id: u8,
    params: &SStarParams,
) -> Result<Completion, ConstructError> {
    if !(1..=32).contains(&id) {
        return Err(ConstructError::InvalidId(id));
    }
    let q = plane.q();
    if q < 5 {
        return Err(ConstructError::OrderTooSmall(q));
    }
    let e = params.e.unwrap_or(0);
    let f = params.f.unwrap_or_else(|| if e == 0 { 1 } else { 0 });
    if e == f {
        return Err(ConstructError::InvalidParams("e and f must differ".into()));
    }
    let p = plane.meet(e, f)?;
    let r = params
        .r
        .or_else(|| plane.points_on(e).iter().copied().find(|&x| x != p))
        .unwrap();
    let r_prime = params
        .r_prime
        .or_else(|| {
            plane
                .points_on(e)
                .iter()
                .copied()
                .find(|&x| x != p && x != r)
        })
        .unwrap();
    let rel = q_on_l1_requirement(id);

    let q_candidates: Vec<u32> = plane
        .points_on(f)
        .iter()
        .copied()
        .filter(|&x| x != p)
        .filter(|&x| params.q_point.map_or(true, |pin| pin == x))
        .collect();
    for &q_pt in &q_candidates {
        let rq = plane.line_through(r, q_pt)?;
        let l0_candidates: Vec<u32> = plane
            .lines_through(p)
            .iter()
            .copied()
            .filter(|&l| l != e && l != f)
            .filter(|&l| params.l0.map_or(true, |pin| pin == l))
            .collect();
        let l1_candidates: Vec<u32> = plane
            .lines_through(r)
            .iter()
            .copied()
            .filter(|&l| l != e)
            .filter(|&l| match rel {
                None => true,
                Some(true) => l == rq,
                Some(false) => l != rq,
            })
            .filter(|&l| params.l1.map_or(true, |pin| pin == l))
            .collect();
        for &l0 in &l0_candidates {
            for &l1 in &l1_candidates {
                let frame = build_frame(plane, e, f, r, r_prime, q_pt, l0, l1)?;
                let ctx = Ctx::new(plane, &frame)?;
                let Some((add_pts, add_lns, extras)) = solve_completion(&ctx, id, params) else {
                    continue;
                };
                let set = MixedSet::new(
                    frame
                        .points
                        .iter()
                        .copied()
                        .chain(add_pts.iter().copied())
                        .collect(),
                    frame
                        .lines
                        .iter()
                        .copied()
                        .chain(add_lns.iter().copied())
                        .collect(),
                );
                if set.len() != (4 * q - 4) as usize {
                    continue;
                }
                if !is_resolving(plane, &set).ok {
                    continue;
                }
                let mut full_params = vec![
                    ("e", e),
                    ("f", f),
                    ("p", p),
                    ("r", r),
                    ("r_prime", r_prime),
                    ("q_point", q_pt),
                    ("l0", l0),
                    ("l1", l1),
                ];
                full_params.extend(extras);
                return Ok(Completion {
                    id,
                    frame,
                    added_points: add_pts,
                    added_lines: add_lns,
                    set,
                    params: full_params,
                });
            }
        }
    }
    Err(ConstructError::SideConditionInfeasible(id))
}

// ---------------------------------------------------------------------------
// Baer subplanes.
// ---------------------------------------------------------------------------

fn sqrt_of(q: u64) -> Option<u64> {
    let r = (q as f64).sqrt().round() as u64;
    (r * r == q).then_some(r)
}

fn check_baer(plane: &Plane, pts: &[u32]) -> bool {
    let q = plane.q();
    let r = match sqrt_of(q) {
        Some(r) => r,
        None => return false,
    };
    if pts.len() != (q + r + 1) as usize {
        return false;
    }
    let sc = resolve::secant_counts(plane, pts);
    sc.iter().all(|&c| c as u64 == 1 || c as u64 == r + 1)
}

/// The subfield subplane: points with a representative whose coordinates all
/// lie in the image of GF(sqrt(q)).
pub fn baer_subplane(plane: &Plane) -> Result<Vec<u32>, ConstructError> {
    let field = plane.field();
    if field.h() % 2 != 0 {
        return Err(ConstructError::NotASquare);
    }
    let sub = crate::galois::Field::new(field.p(), field.h() / 2, None)
        .expect("subfield parameters are valid");
    let emb =
        crate::galois::subfield_embedding(field, &sub).map_err(|_| ConstructError::NotASquare)?;
    let in_image = {
        let mut mask = vec![false; field.q() as usize];
        for &fe in &emb.image {
            mask[fe.0 as usize] = true;
        }
        mask
    };
    let pts: Vec<u32> = (0..plane.n_points())
        .filter(|&i| {
            let rep = plane.point_rep(i);
            rep.iter().all(|c| in_image[c.0 as usize])
        })
        .collect();
    if !check_baer(plane, &pts) {
        return Err(ConstructError::VerificationFailed);
    }
    Ok(pts)
}

/// Partition of the points into q - sqrt(q) + 1 disjoint Baer subplanes:
/// the orbits of the subgroup of the Singer cycle of order q + sqrt(q) + 1.
pub fn baer_partition(plane: &Plane) -> Result<Vec<Vec<u32>>, ConstructError> {
    let q = plane.q();
    let root = sqrt_of(q).ok_or(ConstructError::NotASquare)?;
    let singer = plane.singer_cycle()?;
    let step = (q - root + 1) as usize;
    let n = plane.n_points() as usize;
    // sigma^step generates the subgroup of order q + sqrt(q) + 1
    let mut power = vec![0u32; n];
    for (i, slot) in power.iter_mut().enumerate() {
        let mut cur = i as u32;
        for _ in 0..step {
            cur = singer.point_perm[cur as usize];
        }
        *slot = cur;
    }
    let mut assigned = vec![false; n];
    let mut parts = Vec::with_capacity(step);
    for seed in 0..n {
        if assigned[seed] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut cur = seed as u32;
        while !assigned[cur as usize] {
            assigned[cur as usize] = true;
            orbit.push(cur);
            cur = power[cur as usize];
        }
        orbit.sort_unstable();
        parts.push(orbit);
    }
    if parts.len() != step || !parts.iter().all(|part| check_baer(plane, part)) {
        return Err(ConstructError::VerificationFailed);
    }
    Ok(parts)
}

/// Two disjoint Baer subplanes (the first two parts of the partition).
pub fn disjoint_baer_pair(plane: &Plane) -> Result<(Vec<u32>, Vec<u32>), ConstructError> {
    let parts = baer_partition(plane)?;
    Ok((parts[0].clone(), parts[1].clone()))
}

// ---------------------------------------------------------------------------
// Semi-resolving sets from double blocking sets.
// ---------------------------------------------------------------------------

/// Remove one point from a double blocking set.
pub fn semi_from_2bl_drop_one(
    plane: &Plane,
    b: &[u32],
    drop: Option<u32>,
) -> Result<Vec<u32>, ConstructError> {
    if !secant_profile(plane, b).is_double_blocking {
        return Err(ConstructError::NotDoubleBlocking);
    }
    let drop = match drop {
        Some(d) if b.contains(&d) => d,
        Some(_) => {
            return Err(ConstructError::InvalidParams(
                "dropped point must belong to the set".into(),
            ))
        }
        None => *b.iter().min().unwrap(),
    };
    let out: Vec<u32> = b.iter().copied().filter(|&x| x != drop).collect();
    if !is_semi_resolving(plane, &out).ok {
        return Err(ConstructError::VerificationFailed);
    }
    Ok(out)
}

/// Remove one point from each part of a union of two disjoint blocking sets.
pub fn semi_from_blocking_pair(
    plane: &Plane,
    b1: &[u32],
    b2: &[u32],
    drop1: Option<u32>,
    drop2: Option<u32>,
) -> Result<Vec<u32>, ConstructError> {
    let disjoint = b1.iter().all(|x| !b2.contains(x));
    if !disjoint || !secant_profile(plane, b1).is_blocking || !secant_profile(plane, b2).is_blocking
    {
        return Err(ConstructError::NotDisjointBlockingPair);
    }
    let d1 = match drop1 {
        Some(d) if b1.contains(&d) => d,
        Some(_) => {
            return Err(ConstructError::InvalidParams(
                "first dropped point must lie in the first blocking set".into(),
            ))
        }
        None => *b1.iter().min().unwrap(),
    };
    let d2 = match drop2 {
        Some(d) if b2.contains(&d) => d,
        Some(_) => {
            return Err(ConstructError::InvalidParams(
                "second dropped point must lie in the second blocking set".into(),
            ))
        }
        None => *b2.iter().min().unwrap(),
    };
    let mut out: Vec<u32> = b1
        .iter()
        .chain(b2.iter())
        .copied()
        .filter(|&x| x != d1 && x != d2)
        .collect();
    out.sort_unstable();
    if !is_semi_resolving(plane, &out).ok {
        return Err(ConstructError::VerificationFailed);
    }
    Ok(out)
}

/// For square q: two Baer subplanes of the Singer partition, one point
/// dropped from each, size 2q + 2 sqrt(q).
pub fn semi_from_baer_pair(plane: &Plane) -> Result<Vec<u32>, ConstructError> {
    let (b1, b2) = disjoint_baer_pair(plane)?;
    semi_from_blocking_pair(plane, &b1, &b2, None, None)
}

// ---------------------------------------------------------------------------
// Triangles.
// ---------------------------------------------------------------------------

/// Three pairwise non-concurrent lines, deterministic smallest choice.
pub fn general_position_lines(plane: &Plane) -> (u32, u32, u32) {
    let a = 0u32;
    let b = 1u32;
    let v = plane.meet(a, b).unwrap();
    let c = (0..plane.n_points())
        .find(|&l| l != a && l != b && !plane.incident(v, l))
        .expect("a plane of order >= 2 has three lines in general position");
    (a, b, c)
}

/// Union of three lines in general position without their three vertices:
/// a semi-resolving set of size 3q-3 (3q-4 with one more point dropped,
/// q >= 4).
pub fn vertexless_triangle(plane: &Plane, drop_extra: bool) -> Result<Vec<u32>, ConstructError> {
    let q = plane.q();
    if q < 3 || (drop_extra && q < 4) {
        return Err(ConstructError::OrderTooSmall(q));
    }
    let (a, b, c) = general_position_lines(plane);
    let v_ab = plane.meet(a, b)?;
    let v_ac = plane.meet(a, c)?;
    let v_bc = plane.meet(b, c)?;
    let mut pts: Vec<u32> = plane
        .points_on(a)
        .iter()
        .chain(plane.points_on(b))
        .chain(plane.points_on(c))
        .copied()
        .filter(|&x| x != v_ab && x != v_ac && x != v_bc)
        .collect();
    pts.sort_unstable();
    pts.dedup();
    if drop_extra {
        pts.remove(0);
    }
    let expect = if drop_extra { 3 * q - 4 } else { 3 * q - 3 };
    if pts.len() != expect as usize || !is_semi_resolving(plane, &pts).ok {
        return Err(ConstructError::VerificationFailed);
    }
    Ok(pts)
}

/// All points of three lines in general position: a double blocking set of
/// size 3q.
pub fn three_line_double_blocking(plane: &Plane) -> Result<Vec<u32>, ConstructError> {
    let q = plane.q();
    if q < 2 {
        return Err(ConstructError::OrderTooSmall(q));
    }
    let (a, b, c) = general_position_lines(plane);
    let mut pts: Vec<u32> = plane
        .points_on(a)
        .iter()
        .chain(plane.points_on(b))
        .chain(plane.points_on(c))
        .copied()
        .collect();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() != (3 * q) as usize || !secant_profile(plane, &pts).is_double_blocking {
        return Err(ConstructError::VerificationFailed);
    }
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::Field;
    use crate::resolve::{is_resolving_naive, point_index};

    fn plane(p: u64, h: u32) -> Plane {
        Plane::new(Field::new(p, h, None).unwrap())
    }

    #[test]
    fn canonical_sizes_and_verification() {
        for &(p, h) in &[(3u64, 1u32), (5, 1), (7, 1), (3, 2)] {
            let pi = plane(p, h);
            let (a, b, c) = default_triangle(&pi);
            let set = canonical_4q4(&pi, a, b, c).unwrap();
            assert_eq!(set.len(), (4 * pi.q() - 4) as usize);
            assert!(is_resolving_naive(&pi, &set).ok);
        }
    }

    #[test]
    fn canonical_rejects_collinear_and_small_orders() {
        let pi = plane(3, 1);
        let l0_pts = pi.points_on(0);
        assert_eq!(
            canonical_4q4(&pi, l0_pts[0], l0_pts[1], l0_pts[2]).unwrap_err(),
            ConstructError::CollinearPoints
        );
        let fano = plane(2, 1);
        let (a, b, c) = default_triangle(&fano);
        assert_eq!(
            canonical_4q4(&fano, a, b, c).unwrap_err(),
            ConstructError::OrderTooSmall(2)
        );
    }

    #[test]
    fn fano_five_set() {
        let pi = plane(2, 1);
        let set = fano_resolving5(&pi).unwrap();
        assert_eq!(set.len(), 5);
        assert!(is_resolving_naive(&pi, &set).ok);
        assert_eq!(
            fano_resolving5(&plane(3, 1)).unwrap_err(),
            ConstructError::WrongOrder {
                expected: 2,
                got: 3
            }
        );
    }

    #[test]
    fn hyperoval_pg24() {
        let pi = plane(2, 2);
        let oval = hyperoval(&pi).unwrap();
        assert_eq!(oval.len(), 6);
        let prof = secant_profile(&pi, &oval);
        assert_eq!(prof.histogram[0], 6);
        assert_eq!(prof.histogram[1], 0);
        assert_eq!(prof.histogram[2], 15);
    }

    #[test]
    fn hyperoval_fano() {
        let pi = plane(2, 1);
        let oval = hyperoval(&pi).unwrap();
        assert_eq!(oval.len(), 4);
    }

    #[test]
    fn hyperoval_rejects_odd_order() {
        assert_eq!(
            hyperoval(&plane(3, 1)).unwrap_err(),
            ConstructError::OddOrder
        );
    }

    #[test]
    fn ten_set_pg24() {
        let pi = plane(2, 2);
        let set = hyperoval_resolving10(&pi).unwrap();
        assert_eq!(set.len(), 10);
        assert!(is_resolving_naive(&pi, &set).ok);
    }

    #[test]
    fn completion_c6_matches_canonical() {
        let pi = plane(5, 1);
        let comp = construction_c(&pi, 6, &SStarParams::default()).unwrap();
        let set = canonical_4q4(&pi, comp.frame.p, comp.frame.q_point, comp.frame.r).unwrap();
        assert_eq!(comp.set, set);
    }

    #[test]
    fn all_feasible_completions_verify_at_q5() {
        let pi = plane(5, 1);
        let mut feasible = 0;
        for id in 1..=32 {
            match construction_c(&pi, id, &SStarParams::default()) {
                Ok(comp) => {
                    feasible += 1;
                    assert_eq!(comp.set.len(), 16);
                    assert!(is_resolving_naive(&pi, &comp.set).ok, "C{} fails", id);
                }
                Err(ConstructError::SideConditionInfeasible(_)) => {}
                Err(other) => panic!("C{}: unexpected error {:?}", id, other),
            }
        }
        assert!(
            feasible >= 20,
            "only {} completions feasible at q=5",
            feasible
        );
    }

    #[test]
    fn completion_id_validation() {
        let pi = plane(5, 1);
        assert_eq!(
            construction_c(&pi, 0, &SStarParams::default()).unwrap_err(),
            ConstructError::InvalidId(0)
        );
        assert_eq!(
            construction_c(&pi, 33, &SStarParams::default()).unwrap_err(),
            ConstructError::InvalidId(33)
        );
        let small = plane(3, 1);
        assert_eq!(
            construction_c(&small, 1, &SStarParams::default()).unwrap_err(),
            ConstructError::OrderTooSmall(3)
        );
    }

    #[test]
    fn c13_with_violating_pins_is_infeasible() {
        let pi = plane(5, 1);
        // find pins violating the side condition: l0 ∩ RQ not on R'T
        let free = construction_c(&pi, 13, &SStarParams::default()).unwrap();
        let fr = &free.frame;
        let rq = pi.line_through(fr.r, fr.q_point).unwrap();
        let violating_l0 = pi
            .lines_through(fr.p)
            .iter()
            .copied()
            .filter(|&l| l != fr.e && l != fr.f)
            .find(|&l0| {
                let y = pi.meet(l0, rq).unwrap();
                let t = pi.meet(fr.f, fr.l1).unwrap();
                let rpt = pi.line_through(fr.r_prime, t).unwrap();
                !pi.incident(y, rpt)
            })
            .unwrap();
        let pins = SStarParams {
            q_point: Some(fr.q_point),
            l0: Some(violating_l0),
            l1: Some(fr.l1),
            ..Default::default()
        };
        assert_eq!(
            construction_c(&pi, 13, &pins).unwrap_err(),
            ConstructError::SideConditionInfeasible(13)
        );
    }

    #[test]
    fn sstar_frame_shape() {
        let pi = plane(5, 1);
        let fr = s_star(&pi, &SStarParams::default()).unwrap();
        let q = pi.q() as usize;
        assert_eq!(fr.points.len(), 2 * q - 3);
        assert_eq!(fr.lines.len(), 2 * q - 3);
    }

    #[test]
    fn baer_subplane_pg24_and_pg29() {
        let pi = plane(2, 2);
        let sub = baer_subplane(&pi).unwrap();
        assert_eq!(sub.len(), 7);
        let pi9 = plane(3, 2);
        let sub9 = baer_subplane(&pi9).unwrap();
        assert_eq!(sub9.len(), 13);
        let sc = resolve::secant_counts(&pi9, &sub9);
        assert!(sc.iter().all(|&c| c == 1 || c == 4));
    }

    #[test]
    fn baer_partition_pg24_and_pg29() {
        let pi = plane(2, 2);
        let parts = baer_partition(&pi).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(|p| p.len() == 7));
        let pi9 = plane(3, 2);
        let parts9 = baer_partition(&pi9).unwrap();
        assert_eq!(parts9.len(), 7);
        assert!(parts9.iter().all(|p| p.len() == 13));
        // disjoint cover
        let mut all: Vec<u32> = parts9.iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..pi9.n_points()).collect::<Vec<_>>());
    }

    #[test]
    fn baer_rejects_non_square() {
        assert_eq!(
            baer_subplane(&plane(3, 1)).unwrap_err(),
            ConstructError::NotASquare
        );
        assert_eq!(
            baer_partition(&plane(3, 1)).unwrap_err(),
            ConstructError::NotASquare
        );
    }

    #[test]
    fn semi_from_baer_pair_pg29() {
        let pi = plane(3, 2);
        let s = semi_from_baer_pair(&pi).unwrap();
        assert_eq!(s.len(), 24); // 2q + 2 sqrt(q)
        assert!(is_semi_resolving(&pi, &s).ok);
        // for a semi-resolving set, points of the set have ind <= 1
        let rep = point_index(&pi, &s);
        for &p in &s {
            assert!(rep.ind[p as usize] <= 1);
        }
    }

    #[test]
    fn semi_from_three_line_block_pg24() {
        let pi = plane(2, 2);
        let b = three_line_double_blocking(&pi).unwrap();
        assert_eq!(b.len(), 12);
        let s = semi_from_2bl_drop_one(&pi, &b, None).unwrap();
        assert_eq!(s.len(), 11);
        assert!(is_semi_resolving(&pi, &s).ok);
    }

    #[test]
    fn blocking_pair_drop_rules() {
        let pi = plane(3, 2);
        let (b1, b2) = disjoint_baer_pair(&pi).unwrap();
        // dropping two points of the same part is rejected
        let err = semi_from_blocking_pair(&pi, &b1, &b2, Some(b1[0]), Some(b1[1])).unwrap_err();
        assert!(matches!(err, ConstructError::InvalidParams(_)));
        // overlapping parts are rejected
        assert_eq!(
            semi_from_blocking_pair(&pi, &b1, &b1, None, None).unwrap_err(),
            ConstructError::NotDisjointBlockingPair
        );
    }

    #[test]
    fn triangles() {
        let pi = plane(3, 1);
        let t = vertexless_triangle(&pi, false).unwrap();
        assert_eq!(t.len(), 6);
        assert!(is_semi_resolving(&pi, &t).ok);
        assert_eq!(
            vertexless_triangle(&pi, true).unwrap_err(),
            ConstructError::OrderTooSmall(3)
        );
        let pi4 = plane(2, 2);
        let t4 = vertexless_triangle(&pi4, true).unwrap();
        assert_eq!(t4.len(), 8);
        assert!(is_semi_resolving(&pi4, &t4).ok);
        let b = three_line_double_blocking(&pi4).unwrap();
        assert_eq!(b.len(), 12);
    }
}
