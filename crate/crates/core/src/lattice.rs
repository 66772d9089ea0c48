//! Lattice vectors, lattice simplices and their exact point counts.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// A point of `ℤᵈ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![0; dim])
    }

    /// The unit vector `e_i`, 1-based as in the usual notation.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i - 1] = 1;
        LatticeVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, c: i64) -> Self {
        LatticeVector(
            self.0
                .iter()
                .map(|&x| x.checked_mul(c).expect("lattice coordinate overflow"))
                .collect(),
        )
    }

    /// Appends a trailing coordinate (used for homogenizing by height).
    pub fn lifted(&self, height: i64) -> Self {
        let mut v = self.0.clone();
        v.push(height);
        LatticeVector(v)
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

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        LatticeVector(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a.checked_add(*b).expect("lattice coordinate overflow"))
                .collect(),
        )
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        LatticeVector(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a.checked_sub(*b).expect("lattice coordinate overflow"))
                .collect(),
        )
    }
}

/// Minkowski sum of two finite point sets, sorted and deduplicated.
pub fn sumset(a: &[LatticeVector], b: &[LatticeVector]) -> Vec<LatticeVector> {
    let set: HashSet<LatticeVector> = a
        .par_iter()
        .flat_map_iter(|x| b.iter().map(move |y| x + y))
        .collect();
    let mut out: Vec<_> = set.into_iter().collect();
    out.sort();
    out
}

/// `n`-fold Minkowski sum of `points`; the 0-fold sum is `{0}`.
pub fn iterated_sumset(points: &[LatticeVector], n: usize, dim: usize) -> Vec<LatticeVector> {
    let mut acc = vec![LatticeVector::zero(dim)];
    for _ in 0..n {
        acc = sumset(&acc, points);
    }
    acc
}

/// Barycentric frame of a full-dimensional simplex: for a point `x` and
/// dilation `n`, `|det| * λ_i = rows[i-1] · (x − n·v₀)` for `i ≥ 1`.
#[derive(Clone, Debug)]
struct Frame {
    det_abs: i128,
    rows: Vec<Vec<i128>>,
}

/// A full-dimensional lattice simplex with an ordered vertex list.
#[derive(Clone, Debug)]
pub struct LatticeSimplex {
    vertices: Vec<LatticeVector>,
    det: BigInt,
    frame: Frame,
}

impl PartialEq for LatticeSimplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for LatticeSimplex {}

impl LatticeSimplex {
    pub fn new(vertices: Vec<LatticeVector>) -> Result<Self> {
        let d = vertices.len().checked_sub(1).ok_or(Error::EmptyInput)?;
        for v in &vertices {
            if v.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.dim(),
                });
            }
        }
        // columns are the edge vectors v_i − v_0
        let edges: Vec<Vec<i64>> = (0..d)
            .map(|r| (1..=d).map(|c| vertices[c].0[r] - vertices[0].0[r]).collect())
            .collect();
        let e = linalg::from_i64(&edges);
        let det = linalg::det(&e);
        if det.is_zero() {
            return Err(Error::DegenerateSimplex);
        }
        let adj = linalg::adjugate(&e);
        let sign = if det.is_negative() { -1 } else { 1 };
        let to_i128 = |x: &BigInt| x.to_i128().ok_or(Error::Overflow("simplex frame"));
        let frame = Frame {
            det_abs: to_i128(&det.abs())?,
            rows: adj
                .iter()
                .map(|row| row.iter().map(|x| to_i128(x).map(|v| v * sign)).collect())
                .collect::<Result<_>>()?,
        };
        Ok(LatticeSimplex {
            vertices,
            det,
            frame,
        })
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &LatticeVector {
        &self.vertices[i]
    }

    /// The simplex `n·S` with vertices `n·vᵢ`.
    pub fn dilate(&self, n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::Precondition(format!("dilation factor {n} must be positive")));
        }
        LatticeSimplex::new(self.vertices.iter().map(|v| v.scale(n)).collect())
    }

    /// Returns `|det| · (λ₀, …, λ_d)` for `x` relative to `n·S`.
    pub fn scaled_barycentric(&self, x: &LatticeVector, n: i64) -> Result<Vec<i128>> {
        let d = self.dim();
        if x.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: x.dim(),
            });
        }
        let ov = Error::Overflow("barycentric coordinates");
        let rel: Vec<i128> = (0..d)
            .map(|j| i128::from(x.0[j]) - i128::from(n) * i128::from(self.vertices[0].0[j]))
            .collect();
        let mut lambdas = Vec::with_capacity(d + 1);
        let mut total: i128 = 0;
        for row in &self.frame.rows {
            let mut s: i128 = 0;
            for (a, b) in row.iter().zip(&rel) {
                s = a
                    .checked_mul(*b)
                    .and_then(|p| s.checked_add(p))
                    .ok_or(ov.clone())?;
            }
            total = total.checked_add(s).ok_or(ov.clone())?;
            lambdas.push(s);
        }
        let first = i128::from(n)
            .checked_mul(self.frame.det_abs)
            .and_then(|v| v.checked_sub(total))
            .ok_or(ov)?;
        lambdas.insert(0, first);
        Ok(lambdas)
    }

    /// Whether `x ∈ n·S` (closed).
    pub fn contains(&self, x: &LatticeVector, n: i64) -> Result<bool> {
        Ok(self.scaled_barycentric(x, n)?.iter().all(|&l| l >= 0))
    }

    /// All lattice points of `n·S`, sorted lexicographically.
    pub fn enumerate_dilation_points(&self, n: i64) -> Result<Vec<LatticeVector>> {
        if n < 1 {
            return Err(Error::Precondition(format!("dilation factor {n} must be positive")));
        }
        let d = self.dim();
        let ov = || Error::Overflow("dilation enumeration");
        let lo: Vec<i64> = (0..d)
            .map(|j| self.vertices.iter().map(|v| v.0[j]).min().unwrap() * n)
            .collect();
        let hi: Vec<i64> = (0..d)
            .map(|j| self.vertices.iter().map(|v| v.0[j]).max().unwrap() * n)
            .collect();

        // inequalities c·x ≥ beta describing n·S
        let det = self.frame.det_abs;
        let n128 = i128::from(n);
        let mut ineqs: Vec<(Vec<i128>, i128)> = Vec::with_capacity(d + 1);
        let v0: Vec<i128> = self.vertices[0].0.iter().map(|&x| i128::from(x)).collect();
        let mut sum_row = vec![0i128; d];
        for row in &self.frame.rows {
            let shift: i128 = row.iter().zip(&v0).map(|(a, b)| a * b * n128).sum();
            ineqs.push((row.clone(), shift));
            for (s, a) in sum_row.iter_mut().zip(row) {
                *s += a;
            }
        }
        // λ₀ ≥ 0  ⇔  −Σrows·x ≥ −n·det − Σrows·n·v₀
        let shift: i128 = sum_row.iter().zip(&v0).map(|(a, b)| a * b * n128).sum();
        ineqs.push((
            sum_row.iter().map(|a| -a).collect(),
            -(n128.checked_mul(det).ok_or_else(ov)?) - shift,
        ));

        if d == 0 {
            return Ok(vec![LatticeVector(vec![])]);
        }

        // with d = 1 the only coordinate is the solved one
        let outer: Vec<i64> = if d == 1 { vec![lo[0]] } else { (lo[0]..=hi[0]).collect() };
        let chunks: Vec<Vec<LatticeVector>> = outer
            .par_iter()
            .map(|&x0| {
                let mut out = Vec::new();
                let mut x = lo.clone();
                x[0] = x0;
                let freeze = d == 1;
                loop {
                    // range for the last coordinate
                    let mut lo_last = lo[d - 1];
                    let mut hi_last = hi[d - 1];
                    let mut empty = false;
                    for (c, beta) in &ineqs {
                        let rest: i128 = (0..d - 1).map(|j| c[j] * i128::from(x[j])).sum();
                        let rhs = beta - rest;
                        let cl = c[d - 1];
                        if cl == 0 {
                            if rhs > 0 {
                                empty = true;
                                break;
                            }
                        } else if cl > 0 {
                            let b = Integer::div_ceil(&rhs, &cl);
                            lo_last = lo_last.max(b.clamp(i64::MIN as i128, i64::MAX as i128) as i64);
                        } else {
                            let b = Integer::div_floor(&rhs, &cl);
                            hi_last = hi_last.min(b.clamp(i64::MIN as i128, i64::MAX as i128) as i64);
                        }
                    }
                    if !empty {
                        for t in lo_last..=hi_last {
                            let mut p = x.clone();
                            p[d - 1] = t;
                            out.push(LatticeVector(p));
                        }
                    }
                    // odometer over coordinates 1..d-1 (the last is solved for)
                    let mut j = d - 1;
                    loop {
                        if freeze || j <= 1 {
                            return out;
                        }
                        j -= 1;
                        if x[j] < hi[j] {
                            x[j] += 1;
                            break;
                        }
                        x[j] = lo[j];
                    }
                }
            })
            .collect();
        let mut points: Vec<LatticeVector> = chunks.into_iter().flatten().collect();
        points.sort();
        Ok(points)
    }

    /// Lattice points `Σ sᵢvᵢ` with `0 ≤ sᵢ < 1` and `Σ sᵢ ∈ ℤ`, paired with
    /// their height `Σ sᵢ`, sorted by point.
    ///
    /// The points are read off from coset representatives of the lattice
    /// spanned by the lifted vertices `(vᵢ, 1)`, taken from its Hermite
    /// normal form and then folded into the half-open parallelepiped.
    pub fn box_points(&self) -> Result<Vec<(LatticeVector, u32)>> {
        let d = self.dim();
        let lifted: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .map(|v| {
                let mut r = v.0.clone();
                r.push(1);
                r
            })
            .collect();
        let r = linalg::from_i64(&lifted);
        let h = linalg::hermite_rows(&r);
        if h.len() != d + 1 {
            return Err(Error::DegenerateSimplex);
        }
        let diag: Vec<BigInt> = (0..=d).map(|i| h[i][i].clone()).collect();
        let det_r = linalg::det(&r);
        let adj = linalg::adjugate(&r);

        let mut out = Vec::new();
        let mut rep = vec![BigInt::zero(); d + 1];
        loop {
            // s = rep · R⁻¹ = rep · adj / det
            let mut point = rep.clone();
            for i in 0..=d {
                let num: BigInt = (0..=d).map(|j| &rep[j] * &adj[j][i]).sum();
                let fl = num.div_floor(&det_r);
                if !fl.is_zero() {
                    for (p, x) in point.iter_mut().zip(&r[i]) {
                        *p -= &fl * x;
                    }
                }
            }
            let coords: Vec<i64> = point[..d]
                .iter()
                .map(|x| x.to_i64().ok_or(Error::Overflow("box points")))
                .collect::<Result<_>>()?;
            let height = point[d].to_u32().ok_or(Error::Overflow("box points"))?;
            out.push((LatticeVector(coords), height));

            let mut j = d + 1;
            loop {
                if j == 0 {
                    out.sort();
                    return Ok(out);
                }
                j -= 1;
                rep[j] += 1;
                if rep[j] < diag[j] {
                    break;
                }
                rep[j] = BigInt::zero();
            }
        }
    }

    pub fn delta_polynomial(&self) -> Result<DeltaPolynomial> {
        let mut coeffs = vec![0u64; self.dim() + 1];
        for (_, h) in self.box_points()? {
            coeffs[h as usize] += 1;
        }
        Ok(DeltaPolynomial { coeffs })
    }

    /// `|det(v₁−v₀, …, v_d−v₀)|`.
    pub fn normalized_volume(&self) -> BigInt {
        self.det.abs()
    }
}

/// Coefficients `(δ₀, …, δ_d)` of the Ehrhart numerator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaPolynomial {
    pub coeffs: Vec<u64>,
}

impl DeltaPolynomial {
    pub fn dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn sum(&self) -> BigInt {
        self.coeffs.iter().map(|&c| BigInt::from(c)).sum()
    }

    /// `|nS ∩ ℤᵈ| = Σⱼ δⱼ·C(n−j+d, d)`.
    pub fn ehrhart(&self, n: u64) -> BigInt {
        let d = self.dim() as u64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|&(j, _)| n + d >= j as u64 + d && n >= j as u64)
            .map(|(j, &c)| BigInt::from(c) * binomial(n - j as u64 + d, d))
            .sum()
    }
}

impl fmt::Display for DeltaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "t")?,
                1 => write!(f, "{c}t")?,
                _ if c == 1 => write!(f, "t^{j}")?,
                _ => write!(f, "{c}t^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Index of an affine lattice inside `ℤᵈ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

/// Index in `ℤᵈ` of the affine lattice generated by `points`.
pub fn affine_lattice_index(points: &[LatticeVector]) -> Result<LatticeIndex> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let d = first.dim();
    let diffs: Vec<Vec<i64>> = points.iter().skip(1).map(|p| (p - first).0).collect();
    if d == 0 {
        return Ok(LatticeIndex::Finite(BigInt::one()));
    }
    if diffs.is_empty() {
        return Ok(LatticeIndex::Infinite);
    }
    let h = linalg::hermite_rows(&linalg::from_i64(&diffs));
    if h.len() < d {
        return Ok(LatticeIndex::Infinite);
    }
    Ok(LatticeIndex::Finite((0..d).map(|i| h[i][i].clone()).product()))
}
