//! The radiance obstruction of the affine sphere and the tropical
//! intersection numbers of its maximal cells.
//!
//! A multiset of `dim` rays selects maximal cells of the sphere; when
//! the rays are distinct their cells meet in an edge and the tropical
//! number is the lattice distance between the frame sums of the two
//! endpoints.  It is computed a second time from the dual bases of the
//! endpoint cones and the two routes are required to agree.  Repeats
//! are resolved by the same character relations as on the toric side.
//! The resulting table must match the toric intersection numbers with
//! the anticanonical hypersurface.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Int, Rat};
use crate::sphere::SphereComplex;
use crate::toric::{AmbClass, FirstChoice, ReductionChoices, ToricModel};

/// Every vertex satisfies the two frame identities: the vertex is the
/// PL-weighted sum of its frame vectors, and pairing the tight ray
/// generators against any dual vector reproduces its negative.
pub fn vertex_identity_check(sphere: &SphereComplex) -> Result<()> {
    let fan = sphere.fan();
    let rank = fan.rank();
    for v in 0..sphere.vertices().len() {
        let cone = sphere.vertex_cone(v)?.to_vec();
        let frame = sphere.vertex_frame(v)?;
        let mut weighted = vec![Int::zero(); rank];
        for (&rho, n) in cone.iter().zip(frame) {
            weighted = linalg::vadd(&weighted, &linalg::vscale(sphere.h().value(rho), n));
        }
        if weighted != sphere.vertex(v)? {
            return Err(Error::SpanFailure(format!(
                "vertex {v} is not the PL-weighted sum of its frame"
            )));
        }
        for i in 0..rank {
            let e: Vec<Int> =
                (0..rank).map(|j| if i == j { Int::one() } else { Int::zero() }).collect();
            let mut total = vec![Int::zero(); rank];
            for (&rho, n) in cone.iter().zip(frame) {
                let coeff = linalg::dot(fan.ray(rho), &e);
                total = linalg::vadd(&total, &linalg::vscale(&coeff, n));
            }
            if total != linalg::vneg(&e) {
                return Err(Error::SpanFailure(format!(
                    "frame divisor identity fails at vertex {v} in direction {i}"
                )));
            }
        }
    }
    Ok(())
}

fn tropical_distinct(sphere: &SphereComplex, rays: &[usize]) -> Result<Int> {
    let Some(cell) = sphere.cell_by_rays(rays) else {
        return Ok(Int::zero());
    };
    if cell.dim() != 1 {
        return Err(Error::UnexpectedCellDim(format!(
            "rays {rays:?} select a {}-cell instead of an edge",
            cell.dim()
        )));
    }
    let (v0, v1) = (cell.vertices()[0], cell.vertices()[1]);
    let diff = linalg::vsub(&sphere.mu_component(v1)?, &sphere.mu_component(v0)?);
    let value = if linalg::is_zero_vec(&diff) { Int::zero() } else { linalg::content(&diff) };

    // dual route: the frame bases of the two endpoint cones
    let extra = |v: usize| -> Result<usize> {
        sphere
            .vertex_cone(v)?
            .iter()
            .copied()
            .find(|r| !rays.contains(r))
            .ok_or_else(|| Error::InvalidLoop("edge endpoint cone inside the edge rays".into()))
    };
    for (a, b) in [(v0, v1), (v1, v0)] {
        let ra = extra(a)?;
        let m_ra = sphere.fan().ray(ra);
        let mut sum = Int::zero();
        for &rho in rays {
            let n_b = sphere.frame_vector(b, rho)?;
            sum += linalg::dot(m_ra, &linalg::vneg(&n_b));
        }
        let dual_value = Int::from(2) - sum;
        if dual_value != value {
            return Err(Error::SpanFailure(format!(
                "dual-route tropical number {dual_value} disagrees with frame-sum distance {value}"
            )));
        }
        let direction = linalg::vneg(&sphere.frame_vector(a, ra)?);
        let mu_a = sphere.mu_component(a)?;
        let mu_b = sphere.mu_component(b)?;
        if linalg::vsub(&mu_b, &mu_a) != linalg::vscale(&value, &direction) {
            return Err(Error::SpanFailure(
                "frame-sum difference is not carried by the dual frame direction".into(),
            ));
        }
    }
    if value.is_negative() {
        return Err(Error::SpanFailure("negative tropical intersection number".into()));
    }
    Ok(value)
}

/// Tropical intersection number of a multiset of `dim` rays.
pub fn tropical_intersection_number(sphere: &SphereComplex, rays: &[usize]) -> Result<Int> {
    tropical_intersection_number_with(sphere, rays, &mut FirstChoice)
}

/// The same number under explicit reduction choices; every choice must
/// produce the same value.
pub fn tropical_intersection_number_with(
    sphere: &SphereComplex,
    rays: &[usize],
    choices: &mut dyn ReductionChoices,
) -> Result<Int> {
    let fan = sphere.fan();
    if rays.len() != sphere.dim() {
        return Err(Error::OutOfRange(format!(
            "tropical number needs {} rays, got {}",
            sphere.dim(),
            rays.len()
        )));
    }
    if let Some(&bad) = rays.iter().find(|&&r| r >= fan.rays().len()) {
        return Err(Error::OutOfRange(format!("ray {bad}")));
    }
    let mut key = rays.to_vec();
    key.sort_unstable();
    let support: Vec<usize> = key.iter().copied().dedup().collect();
    if !fan.spans_cone(&support) {
        return Ok(Int::zero());
    }
    if support.len() == key.len() {
        return tropical_distinct(sphere, &key);
    }
    let repeated: Vec<usize> = support
        .iter()
        .copied()
        .filter(|&r| key.iter().filter(|&&k| k == r).count() >= 2)
        .collect();
    let rho = choices.pick_repeated(&repeated);
    let rows: Vec<Vec<Int>> = support.iter().map(|&r| fan.ray(r).to_vec()).collect();
    let rhs: Vec<Int> = support
        .iter()
        .map(|&r| if r == rho { Int::one() } else { Int::zero() })
        .collect();
    let (base, kernel) = linalg::solve_int_with_kernel(&rows, &rhs)
        .ok_or_else(|| Error::SpanFailure(format!("no dual vector for support {support:?}")))?;
    let n = choices.pick_covector(base, &kernel);
    for (&r, want) in support.iter().zip(&rhs) {
        if &linalg::dot(fan.ray(r), &n) != want {
            return Err(Error::SpanFailure(
                "covector choice violates the interpolation conditions".into(),
            ));
        }
    }
    let mut rest = key.clone();
    let pos = rest.iter().position(|&r| r == rho).expect("repeated ray present");
    rest.remove(pos);
    let mut total = Int::zero();
    for other in 0..fan.rays().len() {
        if support.contains(&other) {
            continue;
        }
        let coeff = linalg::dot(fan.ray(other), &n);
        if coeff.is_zero() {
            continue;
        }
        let mut next = rest.clone();
        next.push(other);
        total -= coeff * tropical_intersection_number_with(sphere, &next, choices)?;
    }
    Ok(total)
}

/// All tropical numbers, keyed by sorted multiset.
pub fn tropical_table(sphere: &SphereComplex) -> Result<Vec<(Vec<usize>, Int)>> {
    let nrays = sphere.fan().rays().len();
    (0..nrays)
        .combinations_with_replacement(sphere.dim())
        .map(|key| {
            let v = tropical_intersection_number(sphere, &key)?;
            Ok((key, v))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub rays: Vec<usize>,
    pub tropical: Int,
    pub toric: Int,
}

impl TableEntry {
    pub fn agrees(&self) -> bool {
        self.tropical == self.toric
    }
}

/// Side-by-side table of tropical numbers and toric hypersurface
/// intersection numbers over all multisets.
pub fn compare_tables(sphere: &SphereComplex, model: &ToricModel) -> Result<Vec<TableEntry>> {
    tropical_table(sphere)?
        .into_iter()
        .map(|(rays, tropical)| {
            let toric = model.intersection_with_hypersurface(&rays)?;
            Ok(TableEntry { rays, tropical, toric })
        })
        .collect()
}

pub fn tables_agree(entries: &[TableEntry]) -> bool {
    entries.iter().all(TableEntry::agrees)
}

/// The radiance obstruction class, restricted to the hypersurface: the
/// PL-weighted sum of the divisor classes.
pub fn radiance_class(sphere: &SphereComplex, model: &ToricModel) -> Result<AmbClass> {
    let mut total = model.zero_class(1);
    for rho in 0..sphere.fan().rays().len() {
        let d = model.divisor_class(rho)?;
        total = total.add(&d.scale(&linalg::rat_of(sphere.h().value(rho))))?;
    }
    Ok(total)
}

/// Integral of the top wedge power of the radiance class.
pub fn radiance_top_power(sphere: &SphereComplex, model: &ToricModel) -> Result<Rat> {
    let c = radiance_class(sphere, model)?;
    let mut power = model.one();
    for _ in 0..model.dim() {
        power = model.cup(&power, &c)?;
    }
    model.integral(&power)
}

pub fn top_power_positive(sphere: &SphereComplex, model: &ToricModel) -> Result<bool> {
    Ok(radiance_top_power(sphere, model)? > Rat::zero())
}
