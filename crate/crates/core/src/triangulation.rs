//! Triangulations read off squarefree initial ideals.
//!
//! A squarefree monomial ideal is the Stanley–Reisner ideal of the simplicial
//! complex whose faces are the point sets containing no generator's support.
//! When the ideal is an initial ideal of a toric ideal, that complex is a
//! regular triangulation of the point configuration.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::catalog::VariableCatalog;
use crate::algebra::monomial::Monomial;
use crate::error::{Error, Result};
use crate::family::build_simplex;
use crate::lattice::{LatticeSimplex, LatticeVector};

#[derive(Clone, Debug)]
pub struct SimplicialComplexOnPoints {
    /// One lattice point per vertex index.
    pub points: Vec<LatticeVector>,
    /// Display names of the vertices.
    pub labels: Vec<String>,
    /// Maximal faces, each sorted, in lexicographic order.
    pub cells: Vec<Vec<usize>>,
    /// Vertices of the simplex being triangulated.
    pub hull: Vec<LatticeVector>,
}

/// The complex of `gens` on the catalog points of `kP`.
pub fn complex_from_initial_ideal(
    gens: &[Monomial],
    cat: &VariableCatalog,
) -> Result<SimplicialComplexOnPoints> {
    let points: Vec<LatticeVector> = (0..cat.len()).map(|v| cat.point(v)).collect();
    let labels = (0..cat.len()).map(|v| cat.name(v)).collect();
    let hull = build_simplex(cat.params())?
        .dilate(cat.k() as i64)?
        .vertices()
        .to_vec();
    complex_on_points(gens, points, labels, hull)
}

/// The complex of `gens` on arbitrary points; `hull` lists the vertices of
/// the simplex the complex is meant to triangulate.
pub fn complex_on_points(
    gens: &[Monomial],
    points: Vec<LatticeVector>,
    labels: Vec<String>,
    hull: Vec<LatticeVector>,
) -> Result<SimplicialComplexOnPoints> {
    let n = points.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if let Some(g) = gens.iter().find(|g| !g.is_squarefree()) {
        return Err(Error::Precondition(format!(
            "initial ideal generator with support {:?} is not squarefree",
            g.support().collect::<Vec<_>>()
        )));
    }
    if let Some(g) = gens.iter().find(|g| g.nvars() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: g.nvars(),
        });
    }
    let dim = points[0].dim();
    let supports: Vec<Vec<usize>> = gens.iter().map(|g| g.support().collect()).collect();
    let mut by_var: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, s) in supports.iter().enumerate() {
        for &v in s {
            by_var[v].push(i);
        }
    }

    struct Search<'a> {
        supports: &'a [Vec<usize>],
        by_var: &'a [Vec<usize>],
        in_face: Vec<bool>,
        face: Vec<usize>,
        cells: Vec<Vec<usize>>,
        max_size: usize,
    }

    impl Search<'_> {
        fn can_add(&self, v: usize) -> bool {
            !self.in_face[v]
                && self.by_var[v].iter().all(|&g| {
                    self.supports[g].iter().any(|&u| u != v && !self.in_face[u])
                })
        }

        fn go(&mut self, start: usize) -> Result<()> {
            let n = self.in_face.len();
            let mut maximal = true;
            for v in 0..n {
                if !self.can_add(v) {
                    continue;
                }
                maximal = false;
                if v < start {
                    continue;
                }
                if self.face.len() == self.max_size {
                    return Err(Error::Precondition(format!(
                        "face {:?} has more than {} points, so the ideal does not define a triangulation",
                        [self.face.as_slice(), &[v]].concat(),
                        self.max_size
                    )));
                }
                self.in_face[v] = true;
                self.face.push(v);
                self.go(v + 1)?;
                self.face.pop();
                self.in_face[v] = false;
            }
            if maximal {
                self.cells.push(self.face.clone());
            }
            Ok(())
        }
    }

    let mut search = Search {
        supports: &supports,
        by_var: &by_var,
        in_face: vec![false; n],
        face: Vec::new(),
        cells: Vec::new(),
        max_size: dim + 1,
    };
    search.go(0)?;
    let mut cells = search.cells;
    cells.sort();
    Ok(SimplicialComplexOnPoints {
        points,
        labels,
        cells,
        hull,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    fn from(witness: Option<String>) -> Self {
        CheckResult {
            passed: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangulationReport {
    pub cells: usize,
    pub total_volume: u64,
    pub expected_volume: u64,
    pub unimodular: CheckResult,
    pub volume_sum: CheckResult,
    pub interiors_disjoint: CheckResult,
    pub facets: CheckResult,
    pub all_points_used: CheckResult,
}

impl TriangulationReport {
    fn checks(&self) -> [(&'static str, &CheckResult); 5] {
        [
            ("unimodular", &self.unimodular),
            ("volume_sum", &self.volume_sum),
            ("interiors_disjoint", &self.interiors_disjoint),
            ("facets", &self.facets),
            ("all_points_used", &self.all_points_used),
        ]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.passed)
    }

    pub fn first_failure(&self) -> Option<String> {
        self.checks().iter().find(|(_, c)| !c.passed).map(|(name, c)| {
            format!("{name}: {}", c.witness.clone().unwrap_or_default())
        })
    }
}

fn to_u64(x: &num_bigint::BigInt) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::Overflow("volume"))
}

/// Geometric audit of a complex: unimodular cells, volumes adding up to the
/// hull's volume, no cell centroid inside another cell, every facet shared
/// by at most two cells lying on opposite sides (and unshared facets on the
/// hull boundary), and every lattice point of the hull used as a vertex.
pub fn verify_triangulation(c: &SimplicialComplexOnPoints) -> Result<TriangulationReport> {
    let hull = LatticeSimplex::new(c.hull.clone())?;
    let dim = hull.dim();
    let expected_volume = to_u64(&hull.normalized_volume())?;
    let describe = |cell: &[usize]| {
        let names: Vec<&str> = cell.iter().map(|&v| c.labels[v].as_str()).collect();
        format!("{{{}}}", names.join(", "))
    };

    let mut bad_size = None;
    for cell in &c.cells {
        if cell.len() != dim + 1 {
            bad_size = Some(format!("cell {} has {} points", describe(cell), cell.len()));
            break;
        }
    }
    let simplices: Vec<Option<LatticeSimplex>> = c
        .cells
        .par_iter()
        .map(|cell| {
            if cell.len() != dim + 1 {
                return None;
            }
            LatticeSimplex::new(cell.iter().map(|&v| c.points[v].clone()).collect()).ok()
        })
        .collect();

    let mut total = 0u64;
    let mut unimodular = bad_size;
    for (cell, s) in c.cells.iter().zip(&simplices) {
        match s {
            Some(s) => {
                let vol = to_u64(&s.normalized_volume())?;
                total += vol;
                if vol != 1 && unimodular.is_none() {
                    unimodular = Some(format!("cell {} has normalized volume {vol}", describe(cell)));
                }
            }
            None => {
                if unimodular.is_none() {
                    unimodular = Some(format!("cell {} is degenerate", describe(cell)));
                }
            }
        }
    }
    let volume_sum = (total != expected_volume)
        .then(|| format!("cell volumes sum to {total}, expected {expected_volume}"));

    let scale = dim as i64 + 1;
    let centroids: Vec<LatticeVector> = c
        .cells
        .iter()
        .map(|cell| {
            cell.iter()
                .fold(LatticeVector::zero(dim), |acc, &v| &acc + &c.points[v])
        })
        .collect();
    let overlap = (0..c.cells.len()).into_par_iter().find_map_first(|a| {
        simplices[a].as_ref()?;
        (0..c.cells.len()).find_map(|b| {
            if a == b {
                return None;
            }
            let sb = simplices[b].as_ref()?;
            match sb.contains(&centroids[a], scale) {
                Ok(true) => Some(Ok(format!(
                    "centroid of {} lies in {}",
                    describe(&c.cells[a]),
                    describe(&c.cells[b])
                ))),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            }
        })
    });
    let interiors_disjoint = overlap.transpose()?;

    let facets = check_facets(c, &simplices, &hull, &describe)?;

    let used: HashSet<&LatticeVector> = c
        .cells
        .iter()
        .flat_map(|cell| cell.iter().map(|&v| &c.points[v]))
        .collect();
    let all_points_used = hull
        .enumerate_dilation_points(1)?
        .into_iter()
        .find(|p| !used.contains(p))
        .map(|p| format!("lattice point {p} is not a vertex of any cell"));

    Ok(TriangulationReport {
        cells: c.cells.len(),
        total_volume: total,
        expected_volume,
        unimodular: CheckResult::from(unimodular),
        volume_sum: CheckResult::from(volume_sum),
        interiors_disjoint: CheckResult::from(interiors_disjoint),
        facets: CheckResult::from(facets),
        all_points_used: CheckResult::from(all_points_used),
    })
}

fn check_facets(
    c: &SimplicialComplexOnPoints,
    simplices: &[Option<LatticeSimplex>],
    hull: &LatticeSimplex,
    describe: &dyn Fn(&[usize]) -> String,
) -> Result<Option<String>> {
    // facet → (cell, position of the omitted vertex)
    let mut incidence: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, cell) in c.cells.iter().enumerate() {
        if simplices[ci].is_none() {
            continue;
        }
        for skip in 0..cell.len() {
            let facet: Vec<usize> = cell
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            incidence.entry(facet).or_default().push((ci, skip));
        }
    }
    for (facet, cells) in &incidence {
        match cells.as_slice() {
            [] => unreachable!(),
            [_] => {
                // an unshared facet must lie in a facet of the hull
                let mut zero = vec![true; hull.dim() + 1];
                for &v in facet {
                    let lambda = hull.scaled_barycentric(&c.points[v], 1)?;
                    for (z, l) in zero.iter_mut().zip(&lambda) {
                        *z &= *l == 0;
                    }
                }
                if !zero.iter().any(|&z| z) {
                    return Ok(Some(format!(
                        "facet {} belongs to one cell but is interior to the hull",
                        describe(facet)
                    )));
                }
            }
            [(a, skip_a), (b, skip_b)] => {
                let opposite = c.points[c.cells[*b][*skip_b]].clone();
                let sa = simplices[*a].as_ref().unwrap();
                let lambda = sa.scaled_barycentric(&opposite, 1)?;
                if lambda[*skip_a] >= 0 {
                    return Ok(Some(format!(
                        "cells {} and {} lie on the same side of their common facet",
                        describe(&c.cells[*a]),
                        describe(&c.cells[*b])
                    )));
                }
            }
            _ => {
                return Ok(Some(format!(
                    "facet {} belongs to {} cells",
                    describe(facet),
                    cells.len()
                )))
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangulationJson {
    pub cells: Vec<Vec<LatticeVector>>,
    pub summary: TriangulationReport,
}

pub fn triangulation_json(c: &SimplicialComplexOnPoints, report: &TriangulationReport) -> TriangulationJson {
    TriangulationJson {
        cells: c
            .cells
            .iter()
            .map(|cell| cell.iter().map(|&v| c.points[v].clone()).collect())
            .collect(),
        summary: report.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector(c.to_vec())
    }

    #[test]
    fn single_vertex() {
        let c = complex_on_points(&[], vec![lv(&[])], vec!["p".into()], vec![lv(&[])]).unwrap();
        assert_eq!(c.cells, vec![vec![0]]);
    }

    #[test]
    fn unimodular_simplex() {
        let pts = vec![lv(&[0, 0]), lv(&[1, 0]), lv(&[0, 1])];
        let labels = vec!["a".into(), "b".into(), "c".into()];
        let c = complex_on_points(&[], pts.clone(), labels, pts).unwrap();
        assert_eq!(c.cells, vec![vec![0, 1, 2]]);
        assert!(verify_triangulation(&c).unwrap().passed());
    }

    #[test]
    fn square_split_by_diagonal() {
        // 2Δ₂ has six lattice points; the ideal below cuts it into four
        // unimodular triangles
        let pts = vec![
            lv(&[0, 0]),
            lv(&[1, 0]),
            lv(&[2, 0]),
            lv(&[0, 1]),
            lv(&[1, 1]),
            lv(&[0, 2]),
        ];
        let labels: Vec<String> = (0..6).map(|i| format!("p{i}")).collect();
        let hull = vec![lv(&[0, 0]), lv(&[2, 0]), lv(&[0, 2])];
        let gens: Vec<Monomial> = [[0, 2], [0, 4], [0, 5], [1, 5], [2, 3], [2, 5]]
            .iter()
            .map(|s| Monomial::from_vars(6, s))
            .collect();
        let c = complex_on_points(&gens, pts, labels, hull).unwrap();
        assert_eq!(c.cells.len(), 4);
        let r = verify_triangulation(&c).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());

        let mut broken = c.clone();
        broken.cells.pop();
        let r = verify_triangulation(&broken).unwrap();
        assert!(!r.volume_sum.passed);
        assert!(!r.passed());
    }

    #[test]
    fn rejects_non_squarefree() {
        let pts = vec![lv(&[0]), lv(&[1])];
        let g = Monomial::from_vars(2, &[0, 0]);
        assert!(complex_on_points(&[g], pts.clone(), vec!["a".into(), "b".into()], pts).is_err());
    }
}
