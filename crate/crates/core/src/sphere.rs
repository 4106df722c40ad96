//! Integral affine spheres with singularities.
//!
//! The sphere `B` is the boundary of the dual polytope of a strictly
//! convex integral PL function on a complete unimodular fan.  Its
//! coarse polyhedral structure has one maximal cell per ray of the fan
//! and one vertex per maximal cone; lower cells correspond to the
//! intermediate cones.  The affine structure away from lower cells is
//! recorded through vertex frames, and transports between overlapping
//! vertex charts give the monodromy of the singular affine structure.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{self, Convexity, Fan, LatticePolytope, PlFunction};
use crate::linalg::{self, Int};

/// A closed cell of the sphere: the face of the dual polytope tight on
/// exactly the listed rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    dim: usize,
    rays: Vec<usize>,
    vertices: Vec<usize>,
}

impl Cell {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Rays whose maximal cells contain this cell, sorted.
    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    /// Indices of the sphere vertices lying on this cell, sorted.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }
}

/// A loop crossing from the maximal cell of `rho0` to the maximal cell
/// of `rho1` near vertex `v0` and back near vertex `v1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoopSpec {
    pub v0: usize,
    pub v1: usize,
    pub rho0: usize,
    pub rho1: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimplicityOutcome {
    /// The ray-generator differences of the cell form part of a lattice
    /// basis, so their hull is a standard simplex.
    pub ray_simplex_standard: bool,
    /// The primitive directions spanned by the vertex images under the
    /// canonical frame sums are part of a lattice basis.
    pub mu_simplex_standard: bool,
}

impl SimplicityOutcome {
    pub fn is_simple(&self) -> bool {
        self.ray_simplex_standard && self.mu_simplex_standard
    }
}

#[derive(Debug, Clone)]
pub struct SphereComplex {
    fan: Fan,
    h: PlFunction,
    polytope: LatticePolytope,
    vertices: Vec<Vec<Int>>,
    vertex_cones: Vec<Vec<usize>>,
    frames: Vec<Vec<Vec<Int>>>,
    cells: Vec<Vec<Cell>>,
    cell_index: BTreeMap<Vec<usize>, (usize, usize)>,
}

/// Construct the integral affine sphere of `(fan, h)`.
///
/// Requires a complete unimodular fan and a strictly convex `h`; the
/// dual polytope must have lattice vertices.
pub fn build_sphere(fan: &Fan, h: &PlFunction) -> Result<SphereComplex> {
    if let Some(ci) = fan.non_unimodular_cone() {
        return Err(Error::NotUnimodular(format!(
            "maximal cone {ci} has determinant {}",
            fan.cone_det(ci)
        )));
    }
    if let Some(defect) = fan.completeness_defect() {
        return Err(Error::MalformedFan(format!("fan is not complete: {defect}")));
    }
    let convexity = lattice::convexity_report(fan, h)?;
    if convexity.class != Convexity::StrictlyConvex {
        return Err(Error::NotConvex(match &convexity.witness {
            Some(w) => format!(
                "PL function is not strictly convex: extension from cone {} gives {} on ray {} with value {}",
                w.cone, w.linear_value, w.ray, w.h_value
            ),
            None => "PL function is not strictly convex".into(),
        }));
    }
    let polytope = lattice::dual_polytope(fan, h)?;
    let vertices = polytope.integral_vertices()?;
    let rank = fan.rank();

    let mut vertex_cones: Vec<Vec<usize>> = Vec::with_capacity(vertices.len());
    for v in &vertices {
        let tight: Vec<usize> = (0..fan.rays().len())
            .filter(|&r| linalg::dot(fan.ray(r), v) == -h.value(r).clone())
            .collect();
        if tight.len() != rank {
            return Err(Error::DegenerateFacet(format!(
                "vertex ({}) is tight on {} rays, expected {rank}",
                v.iter().map(|x| x.to_string()).join(", "),
                tight.len()
            )));
        }
        if !fan.max_cones().contains(&tight) {
            return Err(Error::DegenerateFacet(format!(
                "tight rays {tight:?} of a vertex do not form a maximal cone"
            )));
        }
        vertex_cones.push(tight);
    }
    if vertices.len() != fan.max_cones().len() {
        return Err(Error::DegenerateFacet(format!(
            "{} vertices for {} maximal cones",
            vertices.len(),
            fan.max_cones().len()
        )));
    }

    let mut frames: Vec<Vec<Vec<Int>>> = Vec::with_capacity(vertices.len());
    for cone in &vertex_cones {
        let rows: Vec<Vec<Int>> = cone.iter().map(|&r| fan.ray(r).to_vec()).collect();
        let rows_rat: Vec<Vec<linalg::Rat>> =
            rows.iter().map(|r| linalg::rvec_of(r)).collect();
        let inv = linalg::invert_rat(&rows_rat).ok_or_else(|| {
            Error::NotUnimodular("vertex cone matrix is singular".into())
        })?;
        let mut frame: Vec<Vec<Int>> = Vec::with_capacity(rank);
        for j in 0..rank {
            let col: Result<Vec<Int>> = (0..rank)
                .map(|i| {
                    let x = -&inv[i][j];
                    if x.is_integer() {
                        Ok(x.to_integer())
                    } else {
                        Err(Error::NotUnimodular(format!(
                            "frame vector for rays {cone:?} is fractional"
                        )))
                    }
                })
                .collect();
            frame.push(col?);
        }
        for (i, &r) in cone.iter().enumerate() {
            for (j, n) in frame.iter().enumerate() {
                let expected = if i == j { -Int::one() } else { Int::zero() };
                if linalg::dot(fan.ray(r), n) != expected {
                    return Err(Error::NotUnimodular(format!(
                        "frame duality fails for rays {cone:?}"
                    )));
                }
            }
        }
        frames.push(frame);
    }

    let dim_b = rank - 1;
    let mut cone_set: BTreeSet<Vec<usize>> = BTreeSet::new();
    for cone in fan.max_cones() {
        for size in 1..=rank {
            for sub in cone.iter().copied().combinations(size) {
                cone_set.insert(sub);
            }
        }
    }
    let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); dim_b + 1];
    let mut cell_index: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
    for rays in cone_set {
        let dim = rank - rays.len();
        let members: Vec<usize> = (0..vertices.len())
            .filter(|&vi| rays.iter().all(|r| vertex_cones[vi].contains(r)))
            .collect();
        if members.is_empty() {
            return Err(Error::UnexpectedCellDim(format!(
                "cone {rays:?} supports no face of the dual polytope"
            )));
        }
        let diffs: Vec<Vec<linalg::Rat>> = members[1..]
            .iter()
            .map(|&vi| linalg::rvec_of(&linalg::vsub(&vertices[vi], &vertices[members[0]])))
            .collect();
        if linalg::rank_rat(&diffs) != dim {
            return Err(Error::UnexpectedCellDim(format!(
                "face of cone {rays:?} has affine dimension {} but expected {dim}",
                linalg::rank_rat(&diffs)
            )));
        }
        cell_index.insert(rays.clone(), (dim, cells[dim].len()));
        cells[dim].push(Cell { dim, rays, vertices: members });
    }

    Ok(SphereComplex {
        fan: fan.clone(),
        h: h.clone(),
        polytope,
        vertices,
        vertex_cones,
        frames,
        cells,
        cell_index,
    })
}

impl SphereComplex {
    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn h(&self) -> &PlFunction {
        &self.h
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    /// Dimension of the sphere itself (one below the lattice rank).
    pub fn dim(&self) -> usize {
        self.fan.rank() - 1
    }

    pub fn vertices(&self) -> &[Vec<Int>] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> Result<&[Int]> {
        self.vertices
            .get(v)
            .map(|x| x.as_slice())
            .ok_or_else(|| Error::OutOfRange(format!("vertex {v}")))
    }

    /// Rays tight at the vertex, i.e. the maximal cone dual to it.
    pub fn vertex_cone(&self, v: usize) -> Result<&[usize]> {
        self.vertex_cones
            .get(v)
            .map(|x| x.as_slice())
            .ok_or_else(|| Error::OutOfRange(format!("vertex {v}")))
    }

    pub fn cells(&self, dim: usize) -> Result<&[Cell]> {
        self.cells
            .get(dim)
            .map(|c| c.as_slice())
            .ok_or_else(|| Error::OutOfRange(format!("cell dimension {dim}")))
    }

    pub fn all_cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().flatten()
    }

    pub fn cell_by_rays(&self, rays: &[usize]) -> Option<&Cell> {
        let mut key = rays.to_vec();
        key.sort_unstable();
        key.dedup();
        self.cell_index.get(&key).map(|&(d, i)| &self.cells[d][i])
    }

    pub fn facet_of_ray(&self, ray: usize) -> Result<&Cell> {
        self.cell_by_rays(&[ray])
            .ok_or_else(|| Error::OutOfRange(format!("ray {ray}")))
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, c)| if d % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) })
            .sum()
    }

    /// Frame vectors at a vertex, aligned with `vertex_cone(v)`: the
    /// `j`-th vector pairs to `-1` with the `j`-th tight ray and to `0`
    /// with the others.
    pub fn vertex_frame(&self, v: usize) -> Result<&[Vec<Int>]> {
        self.frames
            .get(v)
            .map(|f| f.as_slice())
            .ok_or_else(|| Error::OutOfRange(format!("vertex {v}")))
    }

    /// Frame vector of a single ray at a vertex; zero when the ray is
    /// not tight there.
    pub fn frame_vector(&self, v: usize, ray: usize) -> Result<Vec<Int>> {
        if ray >= self.fan.rays().len() {
            return Err(Error::OutOfRange(format!("ray {ray}")));
        }
        let cone = self.vertex_cone(v)?;
        match cone.iter().position(|&r| r == ray) {
            Some(j) => Ok(self.frames[v][j].clone()),
            None => Ok(vec![Int::zero(); self.fan.rank()]),
        }
    }

    /// Sum of all frame vectors at the vertex; pairs to `-1` with every
    /// tight ray.
    pub fn mu_component(&self, v: usize) -> Result<Vec<Int>> {
        let frame = self.vertex_frame(v)?;
        Ok(frame
            .iter()
            .fold(vec![Int::zero(); self.fan.rank()], |acc, n| linalg::vadd(&acc, n)))
    }

    /// Lattice length of a one-dimensional cell.
    pub fn edge_lattice_length(&self, cell: &Cell) -> Result<Int> {
        if cell.dim != 1 || cell.vertices.len() != 2 {
            return Err(Error::UnexpectedCellDim(format!(
                "expected an edge, got a {}-cell with {} vertices",
                cell.dim,
                cell.vertices.len()
            )));
        }
        let diff = linalg::vsub(
            &self.vertices[cell.vertices[1]],
            &self.vertices[cell.vertices[0]],
        );
        Ok(linalg::content(&diff))
    }

    /// Transport matrix of the loop: the identity plus the rank-one
    /// product of the frame-sum difference with the ray-generator
    /// difference.  Acts on column vectors of the dual lattice.
    pub fn monodromy_transport(&self, spec: &LoopSpec) -> Result<Vec<Vec<Int>>> {
        let LoopSpec { v0, v1, rho0, rho1 } = *spec;
        if rho0 >= self.fan.rays().len() || rho1 >= self.fan.rays().len() {
            return Err(Error::OutOfRange(format!("ray {}", rho0.max(rho1))));
        }
        if v0 == v1 {
            return Err(Error::InvalidLoop("loop vertices must differ".into()));
        }
        if rho0 == rho1 {
            return Err(Error::InvalidLoop("loop facets must differ".into()));
        }
        for v in [v0, v1] {
            let cone = self.vertex_cone(v)?;
            for rho in [rho0, rho1] {
                if !cone.contains(&rho) {
                    return Err(Error::InvalidLoop(format!(
                        "vertex {v} does not lie on the maximal cell of ray {rho}"
                    )));
                }
            }
        }
        let w = linalg::vsub(&self.mu_component(v1)?, &self.mu_component(v0)?);
        let c = linalg::vsub(self.fan.ray(rho1), self.fan.ray(rho0));
        if !linalg::dot(&c, &w).is_zero() {
            return Err(Error::InvalidLoop(
                "transport direction is not fixed by its own covector".into(),
            ));
        }
        let n = self.fan.rank();
        let mut t = linalg::identity_int(n);
        for (i, row) in t.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry += &w[i] * &c[j];
            }
        }
        Ok(t)
    }

    /// Saturated sublattice fixed by every transport around the cell.
    pub fn local_monodromy_invariants(&self, cell: &Cell) -> Result<Vec<Vec<Int>>> {
        let n = self.fan.rank();
        let mut covectors: Vec<Vec<Int>> = Vec::new();
        for pair in cell.vertices.iter().combinations(2) {
            let w = linalg::vsub(
                &self.mu_component(*pair[1])?,
                &self.mu_component(*pair[0])?,
            );
            if linalg::is_zero_vec(&w) {
                continue;
            }
            for rays in cell.rays.iter().combinations(2) {
                covectors.push(linalg::vsub(self.fan.ray(*rays[1]), self.fan.ray(*rays[0])));
            }
        }
        if covectors.is_empty() {
            return Ok(linalg::identity_int(n));
        }
        Ok(linalg::kernel_basis(&covectors))
    }

    /// Both halves of the simplicity condition at a cell of dimension
    /// below the top: the ray-generator differences must be part of a
    /// lattice basis, and so must the primitive directions of the
    /// frame-sum differences of the cell's vertices.
    pub fn simplicity_check(&self, cell: &Cell) -> Result<SimplicityOutcome> {
        if cell.dim >= self.dim() {
            return Err(Error::UnexpectedCellDim(format!(
                "simplicity applies below the top dimension, got a {}-cell",
                cell.dim
            )));
        }
        let ray_diffs: Vec<Vec<Int>> = cell.rays[1..]
            .iter()
            .map(|&r| linalg::vsub(self.fan.ray(r), self.fan.ray(cell.rays[0])))
            .collect();
        let ray_rat: Vec<Vec<linalg::Rat>> =
            ray_diffs.iter().map(|r| linalg::rvec_of(r)).collect();
        let ray_simplex_standard = linalg::rank_rat(&ray_rat) == ray_diffs.len()
            && linalg::extends_to_basis(&ray_diffs);

        let base = self.mu_component(cell.vertices[0])?;
        let mut dirs: BTreeSet<Vec<Int>> = BTreeSet::new();
        for &v in &cell.vertices[1..] {
            let diff = linalg::vsub(&self.mu_component(v)?, &base);
            if !linalg::is_zero_vec(&diff) {
                dirs.insert(linalg::primitive(&diff)?);
            }
        }
        let dirs: Vec<Vec<Int>> = dirs.into_iter().collect();
        let dirs_rat: Vec<Vec<linalg::Rat>> =
            dirs.iter().map(|r| linalg::rvec_of(r)).collect();
        let mu_simplex_standard =
            linalg::rank_rat(&dirs_rat) == dirs.len() && linalg::extends_to_basis(&dirs);

        Ok(SimplicityOutcome { ray_simplex_standard, mu_simplex_standard })
    }

    /// Lattice basis adapted to the maximal cell of a ray: the first
    /// vector points out of the polytope across that cell, the rest
    /// span the tangent lattice, and the determinant is `+1`.
    pub fn facet_orientation_basis(&self, ray: usize) -> Result<Vec<Vec<Int>>> {
        if ray >= self.fan.rays().len() {
            return Err(Error::OutOfRange(format!("ray {ray}")));
        }
        let m = self.fan.ray(ray).to_vec();
        let (b0, tangent) =
            linalg::solve_int_with_kernel(&[m.clone()], &[-Int::one()]).ok_or_else(|| {
                Error::SpanFailure("ray generator is not primitive".into())
            })?;
        let mut basis = vec![b0];
        basis.extend(tangent);
        if linalg::det_int(&basis) == -Int::one() {
            let flipped = linalg::vneg(&basis[1]);
            basis[1] = flipped;
        }
        debug_assert!(linalg::det_int(&basis).is_one());
        Ok(basis)
    }
}
