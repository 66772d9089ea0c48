//! Independent Gröbner basis of a toric ideal, computed from scratch.
//!
//! Starting from the binomials of an integer basis of the kernel lattice of
//! the point configuration, the ideal is saturated one variable at a time:
//! for a homogeneous ideal and a degree reverse lexicographic order with
//! `x_v` cheapest, dividing every element of a Gröbner basis by its largest
//! common power of `x_v` gives a Gröbner basis of the saturation by `x_v`.
//! After all variables, the result is the full toric ideal, whose Gröbner
//! basis under the requested order is then computed.

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::linalg;

use super::groebner::{buchberger, reduce_basis};
use super::monomial::{Binomial, Monomial};
use super::order::MonomialOrder;

/// Default cap on S-pair reductions per Buchberger run.
pub const DEFAULT_MAX_PAIRS: usize = 2_000_000;

/// Reduced Gröbner basis, under `order`, of the toric ideal of the points
/// `images` (each a variable's image, last coordinate 1).
pub fn toric_gb_reference(
    images: &[LatticeVector],
    order: &MonomialOrder,
    max_pairs: usize,
) -> Result<Vec<Binomial>> {
    let n = images.len();
    if n != order.nvars() {
        return Err(Error::DimensionMismatch {
            expected: order.nvars(),
            found: n,
        });
    }
    if images.iter().any(|p| p.0.last() != Some(&1)) {
        return Err(Error::Precondition(
            "toric reference needs homogenized images (last coordinate 1)".into(),
        ));
    }
    let rows: Vec<Vec<i64>> = images.iter().map(|p| p.0.clone()).collect();
    let kernel = linalg::integer_left_kernel(&linalg::from_i64(&rows));

    let mut gens: Vec<Binomial> = Vec::new();
    for u in &kernel {
        let mut pos = vec![0u32; n];
        let mut neg = vec![0u32; n];
        for (v, c) in u.iter().enumerate() {
            let c: i64 = c.try_into().map_err(|_| Error::Overflow("kernel basis"))?;
            let e = u32::try_from(c.unsigned_abs()).map_err(|_| Error::Overflow("kernel basis"))?;
            if c > 0 {
                pos[v] = e;
            } else {
                neg[v] = e;
            }
        }
        if let Some(b) = Binomial::new(Monomial::from_exponents(pos), Monomial::from_exponents(neg)) {
            gens.push(b);
        }
    }

    for v in 0..n {
        let revlex = MonomialOrder::degrevlex_with_last(n, v);
        let gb = reduce_basis(&buchberger(&gens, &revlex, max_pairs)?, &revlex);
        gens = gb
            .into_iter()
            .filter_map(|g| {
                let common = g.lead.exponent(v).min(g.tail.exponent(v));
                if common == 0 {
                    return Some(g);
                }
                let mut strip = Monomial::one(n);
                strip.bump(v, common);
                Binomial::new(g.lead.div(&strip)?, g.tail.div(&strip)?)
            })
            .collect();
    }
    Ok(reduce_basis(&buchberger(&gens, order, max_pairs)?, order))
}
