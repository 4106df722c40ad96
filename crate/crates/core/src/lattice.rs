//! Fans, integral PL functions, and lattice polytopes.
//!
//! The ambient lattice is `M = Z^rank`; a fan lives in `M_R` and its
//! dual polytopes live in the dual lattice `N`.  Halfspaces are stored
//! as pairs `(a, c)` meaning `<a, x> >= -c`, so the dual polytope of a
//! PL function `h` has one row `(m_rho, h(m_rho))` per ray.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Int, Rat};

/// A complete simplicial fan: primitive ray generators plus maximal
/// cones given as ray index sets of size `rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<Int>>,
    max_cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(rank: usize, rays: Vec<Vec<Int>>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        if rank < 2 {
            return Err(Error::MalformedFan(format!("rank {rank} is below 2")));
        }
        if rays.is_empty() {
            return Err(Error::MalformedFan("no rays".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return Err(Error::MalformedFan(format!(
                    "ray {i} has {} coordinates, expected {rank}",
                    r.len()
                )));
            }
            if linalg::is_zero_vec(r) {
                return Err(Error::ZeroVector);
            }
        }
        let mut seen: BTreeSet<&Vec<Int>> = BTreeSet::new();
        for (i, r) in rays.iter().enumerate() {
            if !seen.insert(r) {
                return Err(Error::MalformedFan(format!("ray {i} duplicates an earlier ray")));
            }
        }
        let mut cones: Vec<Vec<usize>> = Vec::with_capacity(max_cones.len());
        for (ci, cone) in max_cones.iter().enumerate() {
            if cone.len() != rank {
                return Err(Error::MalformedFan(format!(
                    "cone {ci} has {} rays, expected {rank}",
                    cone.len()
                )));
            }
            let mut c = cone.clone();
            c.sort_unstable();
            c.dedup();
            if c.len() != rank {
                return Err(Error::MalformedFan(format!("cone {ci} repeats a ray index")));
            }
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::MalformedFan(format!(
                    "cone {ci} references ray {bad}, but there are only {} rays",
                    rays.len()
                )));
            }
            cones.push(c);
        }
        let mut sorted = cones.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != cones.len() {
            return Err(Error::MalformedFan("duplicate maximal cone".into()));
        }
        let fan = Fan { rank, rays, max_cones: cones };
        for ci in 0..fan.max_cones.len() {
            if fan.cone_det(ci).is_zero() {
                return Err(Error::MalformedFan(format!("cone {ci} is not simplicial")));
            }
        }
        Ok(fan)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the hypersurface, `rank - 1`.
    pub fn dim_y(&self) -> usize {
        self.rank - 1
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[Int] {
        &self.rays[i]
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn cone_det(&self, ci: usize) -> Int {
        let m: Vec<Vec<Int>> =
            self.max_cones[ci].iter().map(|&i| self.rays[i].clone()).collect();
        linalg::det_int(&m)
    }

    pub fn rays_primitive(&self) -> bool {
        self.rays.iter().all(|r| linalg::content(r).is_one())
    }

    /// First maximal cone whose generators are not a lattice basis.
    pub fn non_unimodular_cone(&self) -> Option<usize> {
        (0..self.max_cones.len()).find(|&ci| !self.cone_det(ci).abs().is_one())
    }

    pub fn is_unimodular(&self) -> bool {
        self.non_unimodular_cone().is_none()
    }

    /// Whether the given ray indices span a cone of the fan, i.e. are a
    /// subset of some maximal cone.
    pub fn spans_cone(&self, rays: &[usize]) -> bool {
        self.max_cones.iter().any(|c| rays.iter().all(|r| c.contains(r)))
    }

    /// Walls (codimension-one cones) with the list of maximal cones
    /// containing each.
    pub fn walls(&self) -> BTreeMap<Vec<usize>, Vec<usize>> {
        let mut walls: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (ci, cone) in self.max_cones.iter().enumerate() {
            for wall in cone.iter().copied().combinations(self.rank - 1) {
                walls.entry(wall).or_default().push(ci);
            }
        }
        walls
    }

    /// Every wall lies in exactly two maximal cones and the adjacency
    /// graph of maximal cones is connected.
    pub fn is_complete(&self) -> bool {
        self.completeness_defect().is_none()
    }

    pub fn completeness_defect(&self) -> Option<String> {
        let walls = self.walls();
        for (wall, cones) in &walls {
            if cones.len() != 2 {
                return Some(format!(
                    "wall {:?} lies in {} maximal cone(s) instead of 2",
                    wall,
                    cones.len()
                ));
            }
        }
        let n = self.max_cones.len();
        if n == 0 {
            return Some("no maximal cones".into());
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for cones in walls.values() {
            adj[cones[0]].push(cones[1]);
            adj[cones[1]].push(cones[0]);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for &d in &adj[c] {
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        if let Some(c) = seen.iter().position(|&s| !s) {
            return Some(format!("maximal cone {c} is disconnected from cone 0"));
        }
        None
    }

    /// Whether two maximal cones intersect exactly in the cone spanned
    /// by their common rays.  Extreme rays of the intersection are
    /// enumerated from the stacked H-representations.
    pub fn cones_meet_in_face(&self, ci: usize, cj: usize) -> bool {
        let n = self.rank;
        let to_rat = |ci: usize| -> Vec<Vec<Rat>> {
            let cols: Vec<Vec<Int>> =
                self.max_cones[ci].iter().map(|&i| self.rays[i].clone()).collect();
            let mat: Vec<Vec<Rat>> = linalg::transpose(&cols)
                .iter()
                .map(|row| linalg::rvec_of(row))
                .collect();
            linalg::invert_rat(&mat).expect("simplicial cone")
        };
        let scale_rows = |m: Vec<Vec<Rat>>| -> Vec<Vec<Int>> {
            m.into_iter()
                .map(|row| {
                    let lcm = row.iter().fold(Int::one(), |l, x| {
                        num_integer::Integer::lcm(&l, x.denom())
                    });
                    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
                })
                .collect()
        };
        let ri = scale_rows(to_rat(ci));
        let rj = scale_rows(to_rat(cj));
        let mut rows = ri.clone();
        rows.extend(rj.iter().cloned());

        let common: Vec<usize> = self.max_cones[ci]
            .iter()
            .copied()
            .filter(|r| self.max_cones[cj].contains(r))
            .collect();
        let in_common_cone = |x: &[Int]| -> bool {
            // coordinates with respect to cone ci must be supported on
            // the common rays and nonnegative
            for (pos, row) in ri.iter().enumerate() {
                let coord = linalg::dot(row, x);
                if coord.is_negative() {
                    return false;
                }
                if !coord.is_zero() && !common.contains(&self.max_cones[ci][pos]) {
                    return false;
                }
            }
            true
        };

        for subset in (0..rows.len()).combinations(n - 1) {
            let sub: Vec<Vec<Int>> = subset.iter().map(|&i| rows[i].clone()).collect();
            let kernel = linalg::kernel_basis(&sub);
            if kernel.len() != 1 {
                continue;
            }
            for dir in [kernel[0].clone(), linalg::vneg(&kernel[0])] {
                let feasible = rows.iter().all(|row| !linalg::dot(row, &dir).is_negative());
                if feasible && !linalg::is_zero_vec(&dir) && !in_common_cone(&dir) {
                    return false;
                }
            }
        }
        true
    }
}

/// Integral piecewise linear function on a fan, given by its values on
/// the ray generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlFunction {
    values: Vec<Int>,
}

impl PlFunction {
    pub fn new(values: Vec<Int>) -> PlFunction {
        PlFunction { values }
    }

    pub fn constant_one(n: usize) -> PlFunction {
        PlFunction { values: vec![Int::one(); n] }
    }

    pub fn from_i64(values: &[i64]) -> PlFunction {
        PlFunction { values: linalg::ivec(values) }
    }

    pub fn values(&self) -> &[Int] {
        &self.values
    }

    pub fn value(&self, ray: usize) -> &Int {
        &self.values[ray]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `h - phi` where `phi` is 1 on every ray (the anticanonical PL
    /// function of a reflexive fan polytope).
    pub fn minus_one(&self) -> PlFunction {
        PlFunction { values: self.values.iter().map(|v| v - Int::one()).collect() }
    }
}

fn check_h_len(fan: &Fan, h: &PlFunction) -> Result<()> {
    if h.len() != fan.rays().len() {
        return Err(Error::MalformedFan(format!(
            "PL function has {} values for {} rays",
            h.len(),
            fan.rays().len()
        )));
    }
    Ok(())
}

/// Value of the PL extension of `h` at an arbitrary lattice point, or
/// `None` when the point lies outside the fan support.
pub fn pl_extension_value(fan: &Fan, h: &PlFunction, m: &[Int]) -> Option<Rat> {
    for cone in fan.max_cones() {
        let cols: Vec<Vec<Int>> = cone.iter().map(|&i| fan.ray(i).to_vec()).collect();
        let mat: Vec<Vec<Rat>> =
            linalg::transpose(&cols).iter().map(|row| linalg::rvec_of(row)).collect();
        let lambda = linalg::solve_rat(&mat, &linalg::rvec_of(m)).expect("simplicial cone");
        if lambda.iter().all(|l| !l.is_negative()) {
            return Some(
                lambda
                    .iter()
                    .zip(cone)
                    .map(|(l, &i)| l * linalg::rat_of(h.value(i)))
                    .sum(),
            );
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convexity {
    NotConvex,
    Convex,
    StrictlyConvex,
}

/// Location at which convexity (or strictness) is decided: the linear
/// extension of `h` from `cone` evaluated on the generator of `ray`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexityWitness {
    pub cone: usize,
    pub ray: usize,
    pub linear_value: Rat,
    pub h_value: Int,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexityOutcome {
    pub class: Convexity,
    /// Violating pair for `NotConvex`; an equality pair for `Convex`.
    pub witness: Option<ConvexityWitness>,
}

/// Classify `h` on the fan: on every maximal cone the linear extension
/// must stay below `h` on all other rays (strict inequality for strict
/// convexity).
pub fn convexity_report(fan: &Fan, h: &PlFunction) -> Result<ConvexityOutcome> {
    check_h_len(fan, h)?;
    let mut equality: Option<ConvexityWitness> = None;
    for (ci, cone) in fan.max_cones().iter().enumerate() {
        let rows: Vec<Vec<Rat>> =
            cone.iter().map(|&i| linalg::rvec_of(fan.ray(i))).collect();
        let rhs: Vec<Rat> = cone.iter().map(|&i| linalg::rat_of(h.value(i))).collect();
        let ell = linalg::solve_rat(&rows, &rhs).expect("simplicial cone");
        for ray in 0..fan.rays().len() {
            if cone.contains(&ray) {
                continue;
            }
            let lv = linalg::dot_rat(&linalg::rvec_of(fan.ray(ray)), &ell);
            let hv = linalg::rat_of(h.value(ray));
            if lv > hv {
                return Ok(ConvexityOutcome {
                    class: Convexity::NotConvex,
                    witness: Some(ConvexityWitness {
                        cone: ci,
                        ray,
                        linear_value: lv,
                        h_value: h.value(ray).clone(),
                    }),
                });
            }
            if lv == hv && equality.is_none() {
                equality = Some(ConvexityWitness {
                    cone: ci,
                    ray,
                    linear_value: lv,
                    h_value: h.value(ray).clone(),
                });
            }
        }
    }
    Ok(match equality {
        Some(w) => ConvexityOutcome { class: Convexity::Convex, witness: Some(w) },
        None => ConvexityOutcome { class: Convexity::StrictlyConvex, witness: None },
    })
}

pub fn convexity_classify(fan: &Fan, h: &PlFunction) -> Result<Convexity> {
    Ok(convexity_report(fan, h)?.class)
}

/// Bounded rational polytope with both representations.  Halfspace
/// rows `(a, c)` mean `<a, x> >= -c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    rank: usize,
    vertices: Vec<Vec<Rat>>,
    hrep: Vec<(Vec<Int>, Int)>,
}

impl LatticePolytope {
    /// Vertex enumeration from halfspaces by exhaustive subset solving.
    pub fn from_hrep(rank: usize, hrep: Vec<(Vec<Int>, Int)>) -> Result<LatticePolytope> {
        if hrep.iter().any(|(a, _)| a.len() != rank) {
            return Err(Error::SpanFailure("halfspace normal of wrong dimension".into()));
        }
        let normals: Vec<Vec<Rat>> =
            hrep.iter().map(|(a, _)| linalg::rvec_of(a)).collect();
        if linalg::rank_rat(&normals) != rank {
            return Err(Error::SpanFailure(
                "halfspace normals do not span the dual space; polytope is unbounded".into(),
            ));
        }
        // recession cone must be trivial
        let int_rows: Vec<Vec<Int>> = hrep.iter().map(|(a, _)| a.clone()).collect();
        for subset in (0..hrep.len()).combinations(rank - 1) {
            let sub: Vec<Vec<Int>> = subset.iter().map(|&i| int_rows[i].clone()).collect();
            let kernel = linalg::kernel_basis(&sub);
            if kernel.len() != 1 {
                continue;
            }
            for dir in [kernel[0].clone(), linalg::vneg(&kernel[0])] {
                if int_rows.iter().all(|row| !linalg::dot(row, &dir).is_negative()) {
                    return Err(Error::SpanFailure(
                        "recession direction found; polytope is unbounded".into(),
                    ));
                }
            }
        }
        let mut verts: BTreeSet<Vec<Rat>> = BTreeSet::new();
        for subset in (0..hrep.len()).combinations(rank) {
            let rows: Vec<Vec<Rat>> = subset.iter().map(|&i| normals[i].clone()).collect();
            let rhs: Vec<Rat> =
                subset.iter().map(|&i| -linalg::rat_of(&hrep[i].1)).collect();
            let Some(x) = linalg::solve_rat(&rows, &rhs) else {
                continue;
            };
            let feasible = hrep.iter().all(|(a, c)| {
                linalg::dot_rat(&linalg::rvec_of(a), &x) >= -linalg::rat_of(c)
            });
            if feasible {
                verts.insert(x);
            }
        }
        if verts.is_empty() {
            return Err(Error::SpanFailure("empty polytope".into()));
        }
        Ok(LatticePolytope { rank, vertices: verts.into_iter().collect(), hrep })
    }

    /// Convex hull of full-dimensional integral point set.
    pub fn from_points(points: &[Vec<Int>]) -> Result<LatticePolytope> {
        if points.is_empty() {
            return Err(Error::SpanFailure("no points".into()));
        }
        let rank = points[0].len();
        if points.iter().any(|p| p.len() != rank) {
            return Err(Error::SpanFailure("points of mixed dimension".into()));
        }
        let diffs: Vec<Vec<Rat>> = points[1..]
            .iter()
            .map(|p| linalg::rvec_of(&linalg::vsub(p, &points[0])))
            .collect();
        if linalg::rank_rat(&diffs) != rank {
            return Err(Error::SpanFailure("point set is not full-dimensional".into()));
        }
        let mut rows: BTreeSet<(Vec<Int>, Int)> = BTreeSet::new();
        for subset in (0..points.len()).combinations(rank) {
            let base = &points[subset[0]];
            let dmat: Vec<Vec<Int>> = subset[1..]
                .iter()
                .map(|&i| linalg::vsub(&points[i], base))
                .collect();
            let kernel = linalg::kernel_basis(&dmat);
            if kernel.len() != 1 {
                continue;
            }
            let a = linalg::primitive(&kernel[0])?;
            let level = linalg::dot(&a, base);
            let values: Vec<Int> = points.iter().map(|p| linalg::dot(&a, p)).collect();
            if values.iter().all(|v| v >= &level) {
                rows.insert((a.clone(), -level.clone()));
            }
            if values.iter().all(|v| v <= &level) {
                rows.insert((linalg::vneg(&a), level));
            }
        }
        let hrep: Vec<(Vec<Int>, Int)> = rows.into_iter().collect();
        // vertices are the input points whose tight normals span
        let mut verts: BTreeSet<Vec<Rat>> = BTreeSet::new();
        for p in points {
            let tight: Vec<Vec<Rat>> = hrep
                .iter()
                .filter(|(a, c)| linalg::dot(a, p) == -c.clone())
                .map(|(a, _)| linalg::rvec_of(a))
                .collect();
            if linalg::rank_rat(&tight) == rank {
                verts.insert(linalg::rvec_of(p));
            }
        }
        if verts.is_empty() {
            return Err(Error::SpanFailure("no vertices found".into()));
        }
        Ok(LatticePolytope { rank, vertices: verts.into_iter().collect(), hrep })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn hrep(&self) -> &[(Vec<Int>, Int)] {
        &self.hrep
    }

    pub fn integral_vertices(&self) -> Result<Vec<Vec<Int>>> {
        self.vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| {
                        if x.is_integer() {
                            Ok(x.to_integer())
                        } else {
                            Err(Error::NonIntegralVertex(format!(
                                "({})",
                                v.iter().map(|y| y.to_string()).join(", ")
                            )))
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.hrep.iter().all(|(a, c)| {
            linalg::dot_rat(&linalg::rvec_of(a), x) >= -linalg::rat_of(c)
        })
    }

    pub fn contains_interior(&self, x: &[Rat]) -> bool {
        self.hrep.iter().all(|(a, c)| {
            linalg::dot_rat(&linalg::rvec_of(a), x) > -linalg::rat_of(c)
        })
    }

    /// All lattice points, by bounding-box scan (desk scale only).
    pub fn lattice_points(&self) -> Vec<Vec<Int>> {
        let lo_hi: Vec<(i64, i64)> = (0..self.rank)
            .map(|j| {
                let lo = self
                    .vertices
                    .iter()
                    .map(|v| v[j].floor().to_integer())
                    .min()
                    .expect("nonempty");
                let hi = self
                    .vertices
                    .iter()
                    .map(|v| v[j].ceil().to_integer())
                    .max()
                    .expect("nonempty");
                (
                    lo.to_i64().expect("desk-scale coordinate"),
                    hi.to_i64().expect("desk-scale coordinate"),
                )
            })
            .collect();
        lo_hi
            .iter()
            .map(|&(lo, hi)| lo..=hi)
            .multi_cartesian_product()
            .map(|p| linalg::ivec(&p))
            .filter(|p| self.contains(&linalg::rvec_of(p)))
            .collect()
    }
}

/// Polar dual `{ n : <m, n> >= -1 for all m in p }`.  Requires the
/// origin in the interior.
pub fn polar_dual(p: &LatticePolytope) -> Result<LatticePolytope> {
    let zero = vec![Rat::zero(); p.rank()];
    if !p.contains_interior(&zero) {
        return Err(Error::OriginNotInterior);
    }
    let mut hrep: Vec<(Vec<Int>, Int)> = Vec::new();
    for v in p.vertices() {
        let lcm = v.iter().fold(Int::one(), |l, x| num_integer::Integer::lcm(&l, x.denom()));
        let a: Vec<Int> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
        let g = linalg::content(&a).gcd(&lcm);
        hrep.push((a.iter().map(|x| x / &g).collect(), &lcm / &g));
    }
    LatticePolytope::from_hrep(p.rank(), hrep)
}

use num_integer::Integer as _;

/// Dual polytope of a PL function: `{ n : <m_rho, n> >= -h(m_rho) }`.
pub fn dual_polytope(fan: &Fan, h: &PlFunction) -> Result<LatticePolytope> {
    check_h_len(fan, h)?;
    let rows: Vec<(Vec<Int>, Int)> = fan
        .rays()
        .iter()
        .zip(h.values())
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect();
    LatticePolytope::from_hrep(fan.rank(), rows)
}

/// Lattice vertices of the dual polytope; errors when some vertex is
/// fractional.
pub fn dual_polytope_vertices(fan: &Fan, h: &PlFunction) -> Result<Vec<Vec<Int>>> {
    dual_polytope(fan, h)?.integral_vertices()
}

pub fn primitive_vector(v: &[Int]) -> Result<Vec<Int>> {
    linalg::primitive(v)
}

#[derive(Debug, Clone)]
pub struct SigmaReport {
    pub unimodular: bool,
    pub complete: bool,
    pub fan_polytope_matches_dual: bool,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub rank: usize,
    pub rays_primitive: bool,
    pub unimodular: bool,
    pub non_unimodular_cone: Option<usize>,
    pub complete: bool,
    pub completeness_defect: Option<String>,
    pub fan_polytope: LatticePolytope,
    pub reflexive: bool,
    pub polar_dual: Option<LatticePolytope>,
    pub h_convexity: ConvexityOutcome,
    pub h_prime_convexity: ConvexityOutcome,
    pub sigma: Option<SigmaReport>,
}

impl ValidationReport {
    /// Input is usable for the full pipeline.
    pub fn pipeline_ready(&self) -> bool {
        self.rays_primitive
            && self.unimodular
            && self.complete
            && self.reflexive
            && self.h_convexity.class == Convexity::StrictlyConvex
            && self.h_prime_convexity.class != Convexity::NotConvex
            && self.sigma.as_ref().map_or(true, |s| {
                s.unimodular && s.complete && s.fan_polytope_matches_dual
            })
    }
}

/// Validate the toric input data: fan structure, unimodularity,
/// completeness, reflexivity of the fan polytope, convexity of `h` and
/// of `h - phi`, and (when given) the subdivision fan `sigma`.
pub fn validate_input(fan: &Fan, h: &PlFunction, sigma: Option<&Fan>) -> Result<ValidationReport> {
    check_h_len(fan, h)?;
    for ci in 0..fan.max_cones().len() {
        for cj in ci + 1..fan.max_cones().len() {
            if !fan.cones_meet_in_face(ci, cj) {
                return Err(Error::MalformedFan(format!(
                    "maximal cones {ci} and {cj} do not intersect in a common face"
                )));
            }
        }
    }
    let non_unimodular_cone = fan.non_unimodular_cone();
    let completeness_defect = fan.completeness_defect();
    let fan_polytope = LatticePolytope::from_points(fan.rays())?;
    let dual = polar_dual(&fan_polytope).ok();
    let reflexive = dual.as_ref().map_or(false, |d| d.integral_vertices().is_ok());
    let h_convexity = convexity_report(fan, h)?;
    let h_prime_convexity = convexity_report(fan, &h.minus_one())?;
    let sigma_report = match sigma {
        None => None,
        Some(s) => {
            if s.rank() != fan.rank() {
                return Err(Error::MalformedFan(format!(
                    "sigma has rank {}, expected {}",
                    s.rank(),
                    fan.rank()
                )));
            }
            let s_poly = LatticePolytope::from_points(s.rays())?;
            let matches = dual
                .as_ref()
                .map_or(false, |d| d.vertices() == s_poly.vertices());
            Some(SigmaReport {
                unimodular: s.is_unimodular(),
                complete: s.is_complete(),
                fan_polytope_matches_dual: matches,
            })
        }
    };
    Ok(ValidationReport {
        rank: fan.rank(),
        rays_primitive: fan.rays_primitive(),
        unimodular: non_unimodular_cone.is_none(),
        non_unimodular_cone,
        complete: completeness_defect.is_none(),
        completeness_defect,
        fan_polytope,
        reflexive,
        polar_dual: dual,
        h_convexity,
        h_prime_convexity,
        sigma: sigma_report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, ivec, rat};

    pub fn p2_fan() -> Fan {
        Fan::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap()
    }

    pub fn p3_fan() -> Fan {
        Fan::new(
            3,
            vec![
                ivec(&[1, 0, 0]),
                ivec(&[0, 1, 0]),
                ivec(&[0, 0, 1]),
                ivec(&[-1, -1, -1]),
            ],
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap()
    }

    pub fn octahedron_fan() -> Fan {
        Fan::new(
            3,
            vec![
                ivec(&[1, 0, 0]),
                ivec(&[-1, 0, 0]),
                ivec(&[0, 1, 0]),
                ivec(&[0, -1, 0]),
                ivec(&[0, 0, 1]),
                ivec(&[0, 0, -1]),
            ],
            vec![
                vec![0, 2, 4],
                vec![0, 2, 5],
                vec![0, 3, 4],
                vec![0, 3, 5],
                vec![1, 2, 4],
                vec![1, 2, 5],
                vec![1, 3, 4],
                vec![1, 3, 5],
            ],
        )
        .unwrap()
    }

    #[test]
    fn primitive_vector_examples() {
        assert_eq!(primitive_vector(&ivec(&[6, -4])).unwrap(), ivec(&[3, -2]));
        assert_eq!(primitive_vector(&ivec(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn fan_constructor_rejects_structural_defects() {
        let rays = vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 0])];
        assert!(matches!(
            Fan::new(2, rays, vec![vec![0, 1]]),
            Err(Error::MalformedFan(_))
        ));
        let rays = vec![ivec(&[1, 0]), ivec(&[0, 1])];
        assert!(matches!(
            Fan::new(2, rays.clone(), vec![vec![0, 5]]),
            Err(Error::MalformedFan(_))
        ));
        assert!(matches!(
            Fan::new(2, rays.clone(), vec![vec![0, 0]]),
            Err(Error::MalformedFan(_))
        ));
        // cone listed in either orientation is accepted
        assert!(Fan::new(2, rays, vec![vec![1, 0]]).is_ok());
    }

    #[test]
    fn validate_p2_is_clean() {
        let fan = p2_fan();
        let h = PlFunction::constant_one(3);
        let report = validate_input(&fan, &h, None).unwrap();
        assert!(report.rays_primitive);
        assert!(report.unimodular);
        assert!(report.complete);
        assert!(report.reflexive);
        assert_eq!(report.h_convexity.class, Convexity::StrictlyConvex);
        assert!(report.pipeline_ready());
    }

    #[test]
    fn validate_flags_non_unimodular_cone() {
        // complete fan around the origin with one cone of index 2
        let fan = Fan::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[1, 2]), ivec(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        let report = validate_input(&fan, &PlFunction::constant_one(3), None).unwrap();
        assert!(!report.unimodular);
        assert_eq!(report.non_unimodular_cone, Some(0));
        assert!(!report.pipeline_ready());
    }

    #[test]
    fn validate_flags_incomplete_fan() {
        let fan = Fan::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        let report = validate_input(&fan, &PlFunction::constant_one(3), None).unwrap();
        assert!(!report.complete);
        assert!(report.completeness_defect.is_some());
    }

    #[test]
    fn validate_rejects_overlapping_cones() {
        // cone((-1,1),(1,0)) strictly contains cone((1,0),(0,1))
        let fan = Fan::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[-1, 1])],
            vec![vec![0, 1], vec![0, 2]],
        )
        .unwrap();
        assert!(matches!(
            validate_input(&fan, &PlFunction::constant_one(3), None),
            Err(Error::MalformedFan(_))
        ));
    }

    #[test]
    fn polar_dual_of_p2_triangle() {
        let p = LatticePolytope::from_points(&[
            ivec(&[1, 0]),
            ivec(&[0, 1]),
            ivec(&[-1, -1]),
        ])
        .unwrap();
        let dual = polar_dual(&p).unwrap();
        let verts = dual.integral_vertices().unwrap();
        assert_eq!(
            verts,
            vec![ivec(&[-1, -1]), ivec(&[-1, 2]), ivec(&[2, -1])]
        );
    }

    #[test]
    fn polar_dual_swaps_octahedron_and_cube() {
        let oct = LatticePolytope::from_points(&[
            ivec(&[1, 0, 0]),
            ivec(&[-1, 0, 0]),
            ivec(&[0, 1, 0]),
            ivec(&[0, -1, 0]),
            ivec(&[0, 0, 1]),
            ivec(&[0, 0, -1]),
        ])
        .unwrap();
        let cube = polar_dual(&oct).unwrap();
        assert_eq!(cube.vertices().len(), 8);
        assert!(cube
            .integral_vertices()
            .unwrap()
            .iter()
            .all(|v| v.iter().all(|x| x.abs() == int(1))));
        let back = polar_dual(&cube).unwrap();
        assert_eq!(back.vertices(), oct.vertices());
    }

    #[test]
    fn polar_dual_requires_interior_origin() {
        let shifted = LatticePolytope::from_points(&[
            ivec(&[0, 0]),
            ivec(&[2, 0]),
            ivec(&[0, 2]),
        ])
        .unwrap();
        assert_eq!(polar_dual(&shifted), Err(Error::OriginNotInterior));
    }

    #[test]
    fn polar_dual_is_an_involution_on_reflexive_examples() {
        for fan in [p2_fan(), p3_fan(), octahedron_fan()] {
            let p = LatticePolytope::from_points(fan.rays()).unwrap();
            let dd = polar_dual(&polar_dual(&p).unwrap()).unwrap();
            assert_eq!(dd.vertices(), p.vertices());
        }
    }

    #[test]
    fn convexity_classification_examples() {
        let fan = p2_fan();
        let strictly = PlFunction::from_i64(&[1, 1, 1]);
        assert_eq!(convexity_classify(&fan, &strictly).unwrap(), Convexity::StrictlyConvex);
        let not = PlFunction::from_i64(&[1, 1, -3]);
        let outcome = convexity_report(&fan, &not).unwrap();
        assert_eq!(outcome.class, Convexity::NotConvex);
        let w = outcome.witness.unwrap();
        assert_eq!(w.ray, 2);
        assert!(w.linear_value > linalg::rat_of(&w.h_value));
        // doubling phi keeps strict convexity and h' = phi stays convex
        let doubled = PlFunction::from_i64(&[2, 2, 2]);
        assert_eq!(convexity_classify(&fan, &doubled).unwrap(), Convexity::StrictlyConvex);
        assert_ne!(
            convexity_classify(&fan, &doubled.minus_one()).unwrap(),
            Convexity::NotConvex
        );
        // a convex-but-not-strict function: linear on two adjacent cones
        let weak = PlFunction::from_i64(&[1, 1, 0]);
        // cone {0,1} extension x+y evaluated on (-1,-1) gives -2 < 0;
        // cone {1,2} extension: l(0,1)=1, l(-1,-1)=0 -> l=(-1,1);
        // l(1,0) = -1 < 1; cone {2,0}: l(1,0)=1, l(-1,-1)=0 -> l=(1,0)*?
        // l=(1,b): -1-b=0 -> b=-1, l(0,1)=-1 < 1; so this one is strict.
        assert_eq!(convexity_classify(&fan, &weak).unwrap(), Convexity::StrictlyConvex);
        let flat = PlFunction::from_i64(&[0, 0, 0]);
        assert_eq!(convexity_classify(&fan, &flat).unwrap(), Convexity::Convex);
    }

    #[test]
    fn dual_polytope_vertices_examples() {
        let verts = dual_polytope_vertices(&p2_fan(), &PlFunction::constant_one(3)).unwrap();
        assert_eq!(verts, vec![ivec(&[-1, -1]), ivec(&[-1, 2]), ivec(&[2, -1])]);
        let verts = dual_polytope_vertices(&p3_fan(), &PlFunction::constant_one(4)).unwrap();
        assert_eq!(
            verts,
            vec![
                ivec(&[-1, -1, -1]),
                ivec(&[-1, -1, 3]),
                ivec(&[-1, 3, -1]),
                ivec(&[3, -1, -1]),
            ]
        );
    }

    #[test]
    fn dual_polytope_detects_fractional_vertex() {
        let fan = Fan::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[1, 2]), ivec(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        let h = PlFunction::from_i64(&[1, 2, 1]);
        assert!(matches!(
            dual_polytope_vertices(&fan, &h),
            Err(Error::NonIntegralVertex(_))
        ));
    }

    #[test]
    fn implied_lattice_point_constraints() {
        // every lattice point of the fan polytope imposes an inequality
        // already implied by the ray inequalities
        for (fan, h) in [
            (p2_fan(), PlFunction::from_i64(&[1, 1, 1])),
            (p2_fan(), PlFunction::from_i64(&[2, 1, 1])),
            (p3_fan(), PlFunction::constant_one(4)),
            (octahedron_fan(), PlFunction::constant_one(6)),
        ] {
            let dual = dual_polytope(&fan, &h).unwrap();
            let delta = LatticePolytope::from_points(fan.rays()).unwrap();
            for m in delta.lattice_points() {
                let hm = pl_extension_value(&fan, &h, &m).unwrap();
                for v in dual.vertices() {
                    let pairing = linalg::dot_rat(&linalg::rvec_of(&m), v);
                    assert!(pairing >= -hm.clone(), "point {m:?} vertex {v:?}");
                }
            }
        }
    }

    #[test]
    fn lattice_points_of_triangle() {
        let p = LatticePolytope::from_points(&[
            ivec(&[0, 0]),
            ivec(&[2, 0]),
            ivec(&[0, 2]),
        ])
        .unwrap();
        assert_eq!(p.lattice_points().len(), 6);
        assert!(p.contains(&vec![rat(1), rat(0)]));
        assert!(!p.contains(&vec![rat(2), rat(1)]));
    }
}
