//! Polynomials over GF(q) and the Redei polynomial of an affine point set.
//!
//! For a set of affine points (x_i, y_i) the Redei polynomial is
//! R(B,M) = prod_i (M x_i + B - y_i). Substituting a slope M = m, the
//! multiplicity of the root b in R(m,B) is the number of set points on the
//! line Y = mX + b, so the gcd degree
//! k_m = deg gcd(R(m,B), (B^q - B)^2) counts lines of slope m meeting the
//! set at least once, plus those meeting it at least twice. For a direction
//! (m) outside the set (with the line at infinity a >= 2-secant) this gives
//! k_m = 2q - ind(m).
//!
//! The gcd degree against (B^q - B)^2 is computed by evaluation and a
//! derivative test (number of distinct roots plus number of multiple roots);
//! plain Euclid is kept as the generic path and as a cross-check oracle.

use crate::galois::{Fe, Field};
use crate::plane::{Plane, Triple};
use crate::resolve::{self};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RedeiError {
    #[error("point is not affine in the chosen frame")]
    NonAffinePoint,
    #[error("degree of u is not stable under specialization")]
    DegreeUnstable,
    #[error("zero polynomial has no usable degree")]
    ZeroPolynomial,
    #[error("no line qualifies as the frame's line at infinity")]
    NoValidFrame,
}

// ---------------------------------------------------------------------------
// Univariate polynomials, coefficients ascending, trimmed.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<Fe>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last() == Some(&Fe(0)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(f: &Field, a: &Poly, b: &Poly) -> Poly {
        let mut coeffs = vec![Fe(0); a.coeffs.len().max(b.coeffs.len())];
        for (i, &c) in a.coeffs.iter().enumerate() {
            coeffs[i] = c;
        }
        for (i, &c) in b.coeffs.iter().enumerate() {
            coeffs[i] = f.add(coeffs[i], c);
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn mul(f: &Field, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Fe(0); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &ai) in a.coeffs.iter().enumerate() {
            if ai.0 == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(ai, bj));
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn eval(&self, f: &Field, x: Fe) -> Fe {
        let mut acc = Fe(0);
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| {
                let mut acc = Fe(0);
                // i * c in characteristic p
                for _ in 0..(i as u64 % f.p()) {
                    acc = f.add(acc, c);
                }
                acc
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn monic(&self, f: &Field) -> Poly {
        match self.coeffs.last() {
            None => Poly::zero(),
            Some(&lead) if lead == f.one() => self.clone(),
            Some(&lead) => {
                let inv = f.inv(lead).unwrap();
                Poly::from_coeffs(self.coeffs.iter().map(|&c| f.mul(c, inv)).collect())
            }
        }
    }

    /// Remainder of a by a nonzero b.
    pub fn rem(f: &Field, a: &Poly, b: &Poly) -> Poly {
        assert!(!b.is_zero());
        let mut r = a.coeffs.clone();
        let db = b.coeffs.len() - 1;
        let lead_inv = f.inv(*b.coeffs.last().unwrap()).unwrap();
        while r.len() > db {
            let lead = *r.last().unwrap();
            if lead.0 != 0 {
                let scale = f.mul(lead, lead_inv);
                let shift = r.len() - 1 - db;
                for (j, &bj) in b.coeffs.iter().enumerate() {
                    r[shift + j] = f.sub(r[shift + j], f.mul(scale, bj));
                }
            }
            r.pop();
            while r.last() == Some(&Fe(0)) {
                r.pop();
            }
        }
        Poly::from_coeffs(r)
    }

    /// Monic gcd; gcd(f, 0) is monic(f).
    pub fn gcd(f: &Field, a: &Poly, b: &Poly) -> Poly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = Poly::rem(f, &x, &y);
            x = y;
            y = r;
        }
        x.monic(f)
    }
}

/// (B^q - B)^2 over GF(q).
pub fn bq_minus_b_squared(f: &Field) -> Poly {
    let q = f.q() as usize;
    let mut base = vec![Fe(0); q + 1];
    base[1] = f.neg(f.one());
    base[q] = f.one();
    let b = Poly::from_coeffs(base);
    Poly::mul(f, &b, &b)
}

/// deg gcd(g, (B^q - B)^2) by evaluation: the number of distinct roots in
/// GF(q) plus the number of roots of multiplicity at least two (detected by
/// the derivative vanishing as well).
pub fn deg_gcd_with_bq_squared(f: &Field, g: &Poly) -> u32 {
    if g.is_zero() {
        // gcd is (B^q - B)^2 itself
        return 2 * f.q() as u32;
    }
    let deriv = g.derivative(f);
    let mut total = 0u32;
    for x in f.elements() {
        if g.eval(f, x).0 == 0 {
            total += 1;
            if deriv.eval(f, x).0 == 0 {
                total += 1;
            }
        }
    }
    total
}

// ---------------------------------------------------------------------------
// Bivariate polynomials in B and M: dense in the B-degree, sparse lists of
// (M-exponent, coefficient) per B-coefficient.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    /// coeffs[i] = coefficient of B^i, as sorted (m_exp, value) terms
    pub coeffs: Vec<Vec<(u32, Fe)>>,
}

fn sparse_add(f: &Field, a: &[(u32, Fe)], b: &[(u32, Fe)]) -> Vec<(u32, Fe)> {
    let mut out: Vec<(u32, Fe)> = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push(b[j]);
            j += 1;
        } else {
            let v = f.add(a[i].1, b[j].1);
            if v.0 != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl BiPoly {
    pub fn one(f: &Field) -> BiPoly {
        BiPoly {
            coeffs: vec![vec![(0, f.one())]],
        }
    }

    pub fn from_poly(p: &Poly) -> BiPoly {
        BiPoly {
            coeffs: p
                .coeffs
                .iter()
                .map(|&c| if c.0 == 0 { vec![] } else { vec![(0, c)] })
                .collect(),
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |t| t.is_empty()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|t| t.is_empty())
    }

    pub fn degree_b(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|t| !t.is_empty())
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(b, terms)| terms.iter().map(move |&(m, _)| b + m as usize))
            .max()
    }

    /// Multiply by the linear factor (M x + B - y).
    pub fn mul_linear_factor(&self, f: &Field, x: Fe, y: Fe) -> BiPoly {
        let n = self.coeffs.len();
        let mut out: Vec<Vec<(u32, Fe)>> = vec![Vec::new(); n + 1];
        // constant-in-B part of the factor: M x - y
        let mut konst: Vec<(u32, Fe)> = Vec::new();
        if y.0 != 0 {
            konst.push((0, f.neg(y)));
        }
        if x.0 != 0 {
            konst.push((1, x));
        }
        for (i, terms) in self.coeffs.iter().enumerate() {
            if terms.is_empty() {
                continue;
            }
            // B * coeff
            out[i + 1] = sparse_add(f, &out[i + 1], terms);
            // (M x - y) * coeff
            for &(ke, kv) in &konst {
                let scaled: Vec<(u32, Fe)> = terms
                    .iter()
                    .filter_map(|&(m, v)| {
                        let prod = f.mul(v, kv);
                        (prod.0 != 0).then_some((m + ke, prod))
                    })
                    .collect();
                out[i] = sparse_add(f, &out[i], &scaled);
            }
        }
        let mut bp = BiPoly { coeffs: out };
        bp.trim();
        bp
    }

    /// Substitute M = m, leaving a univariate polynomial in B.
    pub fn specialize_m(&self, f: &Field, m: Fe) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|terms| {
                let mut acc = Fe(0);
                for &(e, v) in terms {
                    acc = f.add(acc, f.mul(v, f.pow(m, e as u64)));
                }
                acc
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }
}

/// R(B,M) = prod_i (M x_i + B - y_i) for affine points (x_i, y_i).
pub fn redei_polynomial(f: &Field, points: &[(Fe, Fe)]) -> BiPoly {
    let mut r = BiPoly::one(f);
    for &(x, y) in points {
        r = r.mul_linear_factor(f, x, y);
    }
    r
}

// ---------------------------------------------------------------------------
// Szonyi-Weiner check.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct SzwReport {
    pub deg_u: u32,
    pub deg_v: u32,
    /// k_y = deg gcd(u(B,y), v(B,y)) per field element index y
    pub k: Vec<u32>,
    pub y0: u32,
    pub lhs: u64,
    pub rhs: i64,
    pub holds: bool,
}

/// Evaluate the gcd-degree inequality
/// sum_y' (k_y' - k_y0)^+ <= (deg u - k_y0)(deg v - k_y0).
/// Requires the coefficient of B^deg(u) in u to be a nonzero constant so the
/// degree survives every specialization. For valid inputs `holds` is always
/// true: a failure signals an implementation bug.
pub fn szonyi_weiner_check(
    f: &Field,
    u: &BiPoly,
    v: &BiPoly,
    y0: Fe,
) -> Result<SzwReport, RedeiError> {
    let deg_u = u.total_degree().ok_or(RedeiError::ZeroPolynomial)?;
    let deg_b = u.degree_b().ok_or(RedeiError::ZeroPolynomial)?;
    let lead = &u.coeffs[deg_b];
    let stable = deg_u == deg_b && lead.len() == 1 && lead[0].0 == 0 && lead[0].1 .0 != 0;
    if !stable {
        return Err(RedeiError::DegreeUnstable);
    }
    let deg_v = v.total_degree().ok_or(RedeiError::ZeroPolynomial)?;
    let mut k = Vec::with_capacity(f.q() as usize);
    for y in f.elements() {
        let uy = u.specialize_m(f, y);
        let vy = v.specialize_m(f, y);
        let g = Poly::gcd(f, &uy, &vy);
        k.push(g.degree().unwrap_or(0) as u32);
    }
    let k_y0 = k[y0.0 as usize];
    let lhs: u64 = k
        .iter()
        .map(|&ky| (ky as i64 - k_y0 as i64).max(0) as u64)
        .sum();
    let rhs = (deg_u as i64 - k_y0 as i64) * (deg_v as i64 - k_y0 as i64);
    Ok(SzwReport {
        deg_u: deg_u as u32,
        deg_v: deg_v as u32,
        k,
        y0: y0.0,
        lhs,
        rhs,
        holds: (lhs as i64) <= rhs,
    })
}

/// Randomized trial suite: u is the Redei polynomial of a random affine
/// point set, v = (B^q - B)^2, y0 random. All trials must hold.
#[derive(Clone, Debug, Serialize)]
pub struct SzwTrials {
    pub trials: u64,
    pub failures: Vec<u64>,
    pub all_hold: bool,
}

pub fn szw_random_trials(f: &Field, trials: u64, seed: u64) -> SzwTrials {
    let mut rng = crate::util::SplitMix64::new(seed);
    let q = f.q();
    let v = BiPoly::from_poly(&bq_minus_b_squared(f));
    let mut failures = Vec::new();
    for trial in 0..trials {
        let n = 1 + rng.below(2 * q + 4) as usize;
        let n = n.min((q * q) as usize);
        let cells = rng.subset((q * q) as usize, n);
        let pts: Vec<(Fe, Fe)> = cells
            .iter()
            .map(|&c| (Fe(c / q as u32), Fe(c % q as u32)))
            .collect();
        let u = redei_polynomial(f, &pts);
        let y0 = Fe(rng.below(q) as u32);
        let rep = szonyi_weiner_check(f, &u, &v, y0).expect("Redei polynomials have stable degree");
        if !rep.holds {
            failures.push(trial);
        }
    }
    SzwTrials {
        trials,
        all_hold: failures.is_empty(),
        failures,
    }
}

// ---------------------------------------------------------------------------
// Redei profile of a point set in a plane.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct RedeiProfile {
    /// chosen line at infinity (original indexing) and its secant count
    pub linf: u32,
    pub s: u32,
    /// original point playing the vertical direction
    pub infinity_point: u32,
    /// k_m per slope index m, in the transformed frame
    pub k: Vec<u32>,
    /// slope indices whose direction lies outside the set
    pub directions: Vec<u32>,
    pub delta: u64,
    /// k_m = 2q - ind(m) for every direction in D
    pub identity_ok: bool,
    /// delta <= t (holds for every point set)
    pub delta_le_t: bool,
    /// delta <= |S| (theorem-backed only when the set is semi-resolving)
    pub delta_le_size: bool,
    /// the profiled set is semi-resolving
    pub semi_resolving: bool,
    /// ind(p)^2 - (q - beta) ind(p) + delta >= 0 for every p in D
    pub inequality1_ok: bool,
}

impl RedeiProfile {
    /// Every theorem-backed property of this profile holds.
    pub fn consistent(&self) -> bool {
        self.identity_ok
            && self.delta_le_t
            && self.inequality1_ok
            && (!self.semi_resolving || self.delta_le_size)
    }
}

fn invert3(f: &Field, m: &[Triple; 3]) -> Option<[Triple; 3]> {
    let det = {
        let t1 = f.mul(
            m[0][0],
            f.sub(f.mul(m[1][1], m[2][2]), f.mul(m[1][2], m[2][1])),
        );
        let t2 = f.mul(
            m[0][1],
            f.sub(f.mul(m[1][0], m[2][2]), f.mul(m[1][2], m[2][0])),
        );
        let t3 = f.mul(
            m[0][2],
            f.sub(f.mul(m[1][0], m[2][1]), f.mul(m[1][1], m[2][0])),
        );
        f.add(f.sub(t1, t2), t3)
    };
    if det.0 == 0 {
        return None;
    }
    let d = f.inv(det).unwrap();
    let cof = |r1: usize, c1: usize, r2: usize, c2: usize| {
        f.sub(f.mul(m[r1][c1], m[r2][c2]), f.mul(m[r1][c2], m[r2][c1]))
    };
    Some([
        [
            f.mul(cof(1, 1, 2, 2), d),
            f.mul(f.neg(cof(0, 1, 2, 2)), d),
            f.mul(cof(0, 1, 1, 2), d),
        ],
        [
            f.mul(f.neg(cof(1, 0, 2, 2)), d),
            f.mul(cof(0, 0, 2, 2), d),
            f.mul(f.neg(cof(0, 0, 1, 2)), d),
        ],
        [
            f.mul(cof(1, 0, 2, 1), d),
            f.mul(f.neg(cof(0, 0, 2, 1)), d),
            f.mul(cof(0, 0, 1, 1), d),
        ],
    ])
}

/// Move `linf` to [0:0:1] and `y_pt` (a point of it) to (0:1:0); the images
/// of the remaining basis points are the smallest-index choices. Returns the
/// transformed point set.
fn transform_to_frame(plane: &Plane, points: &[u32], linf: u32, y_pt: u32) -> Vec<u32> {
    let f = plane.field();
    let x_pt = plane
        .points_on(linf)
        .iter()
        .copied()
        .find(|&p| p != y_pt)
        .unwrap();
    let o_pt = (0..plane.n_points())
        .find(|&p| !plane.incident(p, linf))
        .unwrap();
    // columns X, Y, O map the standard frame onto ours; invert to go back
    let xr = plane.point_rep(x_pt);
    let yr = plane.point_rep(y_pt);
    let or = plane.point_rep(o_pt);
    let cols = [
        [xr[0], yr[0], or[0]],
        [xr[1], yr[1], or[1]],
        [xr[2], yr[2], or[2]],
    ];
    let inv = invert3(f, &cols).expect("frame points are in general position");
    points
        .iter()
        .map(|&p| {
            let r = plane.point_rep(p);
            let w = [
                f.add(
                    f.add(f.mul(inv[0][0], r[0]), f.mul(inv[0][1], r[1])),
                    f.mul(inv[0][2], r[2]),
                ),
                f.add(
                    f.add(f.mul(inv[1][0], r[0]), f.mul(inv[1][1], r[1])),
                    f.mul(inv[1][2], r[2]),
                ),
                f.add(
                    f.add(f.mul(inv[2][0], r[0]), f.mul(inv[2][1], r[1])),
                    f.mul(inv[2][2], r[2]),
                ),
            ];
            plane.point_index(w)
        })
        .collect()
}

/// Gcd-degree profile of a point set: choose an s-secant (2 <= s <= q-1) as
/// the line at infinity with a set-free vertical direction, build the Redei
/// polynomial of the affine part, and compare the per-slope gcd degrees with
/// the point indices.
///
/// `frame`: optional (line, infinity point) override; the default is the
/// minimal-s, minimal-index line and the smallest admissible point on it.
pub fn redei_profile(
    plane: &Plane,
    points: &[u32],
    frame: Option<(u32, u32)>,
) -> Result<RedeiProfile, RedeiError> {
    let f = plane.field().clone();
    let q = f.q();
    let sc = resolve::secant_counts(plane, points);
    let member = {
        let mut m = vec![false; plane.n_points() as usize];
        for &p in points {
            m[p as usize] = true;
        }
        m
    };
    let (linf, y_pt) = match frame {
        Some((l, y)) => {
            let s = sc[l as usize] as u64;
            if !(2..=q - 1).contains(&s) || !plane.incident(y, l) || member[y as usize] {
                return Err(RedeiError::NoValidFrame);
            }
            (l, y)
        }
        None => {
            let mut best: Option<(u16, u32)> = None;
            for l in 0..plane.n_points() {
                let s = sc[l as usize];
                if (2..=q as u16 - 1).contains(&s) {
                    if best.map_or(true, |(bs, _)| s < bs) {
                        best = Some((s, l));
                    }
                }
            }
            let (_, l) = best.ok_or(RedeiError::NoValidFrame)?;
            let y = plane
                .points_on(l)
                .iter()
                .copied()
                .find(|&p| !member[p as usize])
                .expect("an s-secant with s <= q-1 has a point outside the set");
            (l, y)
        }
    };
    let s = sc[linf as usize] as u32;
    let transformed = transform_to_frame(plane, points, linf, y_pt);

    let affine: Vec<(Fe, Fe)> = transformed
        .iter()
        .filter_map(|&p| plane.affine_coords(p))
        .collect();
    if affine.len() != points.len() - s as usize {
        return Err(RedeiError::NonAffinePoint);
    }
    let r = redei_polynomial(&f, &affine);

    let mut k = Vec::with_capacity(q as usize);
    for m in f.elements() {
        let rm = r.specialize_m(&f, m);
        k.push(deg_gcd_with_bq_squared(&f, &rm));
    }

    let t_member = {
        let mut m = vec![false; plane.n_points() as usize];
        for &p in &transformed {
            m[p as usize] = true;
        }
        m
    };
    let directions: Vec<u32> = (0..q as u32)
        .filter(|&m| !t_member[plane.slope_point(Fe(m)) as usize])
        .collect();

    let idx = resolve::point_index(plane, &transformed);
    let mut identity_ok = true;
    let mut delta = 0u64;
    let mut delta_via_k: i64 = 0;
    for &m in &directions {
        let ind = idx.ind[plane.slope_point(Fe(m)) as usize] as u64;
        delta += ind;
        delta_via_k += 2 * q as i64 - k[m as usize] as i64;
        if k[m as usize] as u64 != 2 * q - ind {
            identity_ok = false;
        }
    }
    identity_ok &= delta_via_k == delta as i64;
    let beta = idx.beta;
    let inequality1_ok = directions.iter().all(|&m| {
        let ind = idx.ind[plane.slope_point(Fe(m)) as usize] as i64;
        ind * ind - (q as i64 - beta) * ind + delta as i64 >= 0
    });
    Ok(RedeiProfile {
        linf,
        s,
        infinity_point: y_pt,
        k,
        directions,
        delta,
        identity_ok,
        delta_le_t: delta <= idx.t,
        delta_le_size: delta <= points.len() as u64,
        semi_resolving: resolve::is_semi_resolving(plane, points).ok,
        inequality1_ok,
    })
}
