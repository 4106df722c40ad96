//! Intersection numbers on a smooth complete toric variety and the
//! ambient cohomology of its anticanonical hypersurface.
//!
//! Products of toric divisors reduce by two rules: a square-free
//! product over rays that span no cone vanishes, and a repeated ray is
//! rewritten through the divisor of a character that is `1` on the
//! repeated ray and `0` on the other rays of the support.  Ambient
//! hypersurface classes are stored by their pairings against the
//! complementary-degree square-free monomials, which determines them
//! faithfully because that pairing is nondegenerate on the image ring.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::Fan;
use crate::linalg::{self, Int, Rat};

/// The discretionary choices made while reducing a divisor product.
/// Any implementation must yield the same intersection numbers.
pub trait ReductionChoices {
    /// Choose one of the rays occurring at least twice.
    fn pick_repeated(&mut self, candidates: &[usize]) -> usize;
    /// Choose a dual vector among `base + <kernel>` solving the same
    /// interpolation conditions.
    fn pick_covector(&mut self, base: Vec<Int>, kernel: &[Vec<Int>]) -> Vec<Int>;
}

/// Deterministic default: first repeated ray, untouched covector.
pub struct FirstChoice;

impl ReductionChoices for FirstChoice {
    fn pick_repeated(&mut self, candidates: &[usize]) -> usize {
        candidates[0]
    }

    fn pick_covector(&mut self, base: Vec<Int>, _kernel: &[Vec<Int>]) -> Vec<Int> {
        base
    }
}

/// Seeded random choices, for independence checks.
pub struct SeededChoice {
    rng: ChaCha8Rng,
}

impl SeededChoice {
    pub fn new(seed: u64) -> SeededChoice {
        SeededChoice { rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl ReductionChoices for SeededChoice {
    fn pick_repeated(&mut self, candidates: &[usize]) -> usize {
        candidates[self.rng.gen_range(0..candidates.len())]
    }

    fn pick_covector(&mut self, base: Vec<Int>, kernel: &[Vec<Int>]) -> Vec<Int> {
        let mut n = base;
        for k in kernel {
            let c: i64 = self.rng.gen_range(-1..=1);
            if c != 0 {
                n = linalg::vadd(&n, &linalg::vscale(&linalg::int(c), k));
            }
        }
        n
    }
}

fn reduce(
    fan: &Fan,
    key: Vec<usize>,
    choices: &mut dyn ReductionChoices,
    memo: &mut BTreeMap<Vec<usize>, Int>,
) -> Result<Int> {
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    let support: Vec<usize> = key.iter().copied().dedup().collect();
    let value = if !fan.spans_cone(&support) {
        Int::zero()
    } else if support.len() == key.len() {
        Int::one()
    } else {
        let repeated: Vec<usize> =
            support.iter().copied().filter(|r| key.iter().filter(|&&k| k == *r).count() >= 2).collect();
        let rho = choices.pick_repeated(&repeated);
        let rows: Vec<Vec<Int>> = support.iter().map(|&r| fan.ray(r).to_vec()).collect();
        let rhs: Vec<Int> = support
            .iter()
            .map(|&r| if r == rho { Int::one() } else { Int::zero() })
            .collect();
        let (base, kernel) = linalg::solve_int_with_kernel(&rows, &rhs).ok_or_else(|| {
            Error::SpanFailure(format!("no dual vector for support {support:?}"))
        })?;
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
            next.sort_unstable();
            total -= coeff * reduce(fan, next, choices, memo)?;
        }
        total
    };
    memo.insert(key, value.clone());
    Ok(value)
}

/// Intersection theory of the toric variety of a complete unimodular
/// fan, with the induced ring on its anticanonical hypersurface.
#[derive(Debug, Clone)]
pub struct ToricModel {
    fan: Fan,
    cache: BTreeMap<Vec<usize>, Int>,
    monomials: Vec<Vec<Vec<usize>>>,
    pairing: Vec<Vec<Vec<Int>>>,
    amb_basis: Vec<Vec<usize>>,
}

/// Degree-graded ambient class on the hypersurface, stored as its
/// pairings against the complementary-degree square-free monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbClass {
    degree: usize,
    functional: Vec<Rat>,
}

impl AmbClass {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn functional(&self) -> &[Rat] {
        &self.functional
    }

    pub fn is_zero(&self) -> bool {
        self.functional.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &AmbClass) -> Result<AmbClass> {
        if self.degree != other.degree || self.functional.len() != other.functional.len() {
            return Err(Error::SubspaceDimMismatch(format!(
                "cannot add classes of degree {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(AmbClass {
            degree: self.degree,
            functional: self
                .functional
                .iter()
                .zip(&other.functional)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &AmbClass) -> Result<AmbClass> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AmbClass {
        AmbClass {
            degree: self.degree,
            functional: self.functional.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> AmbClass {
        AmbClass {
            degree: self.degree,
            functional: self.functional.iter().map(|x| x * c).collect(),
        }
    }
}

impl ToricModel {
    pub fn new(fan: &Fan) -> Result<ToricModel> {
        if let Some(ci) = fan.non_unimodular_cone() {
            return Err(Error::NotUnimodular(format!(
                "maximal cone {ci} has determinant {}",
                fan.cone_det(ci)
            )));
        }
        if let Some(defect) = fan.completeness_defect() {
            return Err(Error::MalformedFan(format!("fan is not complete: {defect}")));
        }
        let rank = fan.rank();
        let d = rank - 1;
        let mut cache: BTreeMap<Vec<usize>, Int> = BTreeMap::new();
        let mut first = FirstChoice;
        for key in (0..fan.rays().len()).combinations_with_replacement(rank) {
            reduce(fan, key, &mut first, &mut cache)?;
        }
        let mut monomials: Vec<Vec<Vec<usize>>> = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let mons: Vec<Vec<usize>> = (0..fan.rays().len())
                .combinations(k)
                .filter(|s| fan.spans_cone(s))
                .collect();
            monomials.push(mons);
        }
        let with_y = |s: &[usize]| -> Int {
            let mut total = Int::zero();
            for rho in 0..fan.rays().len() {
                let mut key = s.to_vec();
                key.push(rho);
                key.sort_unstable();
                total += cache.get(&key).expect("cache is total").clone();
            }
            total
        };
        let mut pairing: Vec<Vec<Vec<Int>>> = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let rows: Vec<Vec<Int>> = monomials[k]
                .iter()
                .map(|s| {
                    monomials[d - k]
                        .iter()
                        .map(|t| {
                            let mut st = s.clone();
                            st.extend(t);
                            st.sort_unstable();
                            with_y(&st)
                        })
                        .collect()
                })
                .collect();
            pairing.push(rows);
        }
        let amb_basis: Vec<Vec<usize>> = pairing
            .iter()
            .map(|rows| {
                let rat: Vec<Vec<Rat>> = rows.iter().map(|r| linalg::rvec_of(r)).collect();
                linalg::independent_rows(&rat)
            })
            .collect();
        for k in 0..=d {
            if amb_basis[k].len() != amb_basis[d - k].len() {
                return Err(Error::SubspaceDimMismatch(format!(
                    "ambient ranks in degrees {k} and {} disagree",
                    d - k
                )));
            }
        }
        Ok(ToricModel { fan: fan.clone(), cache, monomials, pairing, amb_basis })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    /// Dimension of the hypersurface.
    pub fn dim(&self) -> usize {
        self.fan.rank() - 1
    }

    fn check_rays(&self, rays: &[usize]) -> Result<()> {
        if let Some(&bad) = rays.iter().find(|&&r| r >= self.fan.rays().len()) {
            return Err(Error::OutOfRange(format!("ray {bad}")));
        }
        Ok(())
    }

    /// Product of the listed toric divisors on the ambient variety.
    pub fn intersection_number(&self, rays: &[usize]) -> Result<Int> {
        self.check_rays(rays)?;
        if rays.len() != self.fan.rank() {
            return Err(Error::OutOfRange(format!(
                "intersection number needs {} divisors, got {}",
                self.fan.rank(),
                rays.len()
            )));
        }
        let mut key = rays.to_vec();
        key.sort_unstable();
        Ok(self.cache.get(&key).expect("cache is total").clone())
    }

    /// Same number recomputed from scratch with the given choices.
    pub fn intersection_number_with(
        &self,
        rays: &[usize],
        choices: &mut dyn ReductionChoices,
    ) -> Result<Int> {
        self.check_rays(rays)?;
        if rays.len() != self.fan.rank() {
            return Err(Error::OutOfRange(format!(
                "intersection number needs {} divisors, got {}",
                self.fan.rank(),
                rays.len()
            )));
        }
        let mut key = rays.to_vec();
        key.sort_unstable();
        let mut memo = BTreeMap::new();
        reduce(&self.fan, key, choices, &mut memo)
    }

    /// Product of `dim` divisors with the anticanonical hypersurface.
    pub fn intersection_with_hypersurface(&self, rays: &[usize]) -> Result<Int> {
        self.check_rays(rays)?;
        if rays.len() != self.dim() {
            return Err(Error::OutOfRange(format!(
                "hypersurface intersection needs {} divisors, got {}",
                self.dim(),
                rays.len()
            )));
        }
        let mut total = Int::zero();
        for rho in 0..self.fan.rays().len() {
            let mut key = rays.to_vec();
            key.push(rho);
            total += self.intersection_number(&key)?;
        }
        Ok(total)
    }

    /// Square-free cone-spanning monomials of the given degree.
    pub fn monomials(&self, k: usize) -> &[Vec<usize>] {
        if k < self.monomials.len() {
            &self.monomials[k]
        } else {
            &[]
        }
    }

    pub fn amb_dim(&self, k: usize) -> usize {
        if k < self.amb_basis.len() {
            self.amb_basis[k].len()
        } else {
            0
        }
    }

    /// Ambient Hodge-diagonal dimensions in degrees `0..=dim`.
    pub fn amb_dims(&self) -> Vec<usize> {
        (0..=self.dim()).map(|k| self.amb_dim(k)).collect()
    }

    /// Monomials selected as a basis of the degree-`k` ambient part.
    pub fn basis_monomials(&self, k: usize) -> Vec<&[usize]> {
        self.amb_basis[k]
            .iter()
            .map(|&i| self.monomials[k][i].as_slice())
            .collect()
    }

    pub fn zero_class(&self, degree: usize) -> AmbClass {
        let functional = if degree <= self.dim() {
            vec![Rat::zero(); self.monomials[self.dim() - degree].len()]
        } else {
            Vec::new()
        };
        AmbClass { degree, functional }
    }

    /// Restriction of a product of toric divisors (repeats allowed).
    pub fn class_from_monomial(&self, rays: &[usize]) -> Result<AmbClass> {
        self.check_rays(rays)?;
        let degree = rays.len();
        if degree > self.dim() {
            return Ok(self.zero_class(degree));
        }
        let functional = self.monomials[self.dim() - degree]
            .iter()
            .map(|t| {
                let mut key = rays.to_vec();
                key.extend(t);
                self.intersection_with_hypersurface_multiset(&key)
            })
            .collect::<Result<Vec<Int>>>()?
            .iter()
            .map(linalg::rat_of)
            .collect();
        Ok(AmbClass { degree, functional })
    }

    fn intersection_with_hypersurface_multiset(&self, rays: &[usize]) -> Result<Int> {
        let mut total = Int::zero();
        for rho in 0..self.fan.rays().len() {
            let mut key = rays.to_vec();
            key.push(rho);
            key.sort_unstable();
            total += self.cache.get(&key).expect("cache is total").clone();
        }
        Ok(total)
    }

    pub fn one(&self) -> AmbClass {
        self.class_from_monomial(&[]).expect("empty monomial")
    }

    pub fn divisor_class(&self, ray: usize) -> Result<AmbClass> {
        self.class_from_monomial(&[ray])
    }

    /// Restriction of the anticanonical divisor class.
    pub fn anticanonical_class(&self) -> AmbClass {
        let mut total = self.zero_class(1);
        for ray in 0..self.fan.rays().len() {
            total = total
                .add(&self.divisor_class(ray).expect("ray in range"))
                .expect("equal degrees");
        }
        total
    }

    /// Coordinates of a class in the monomial basis of its degree.
    pub fn coords(&self, a: &AmbClass) -> Result<Vec<Rat>> {
        if a.degree > self.dim() {
            return Ok(Vec::new());
        }
        let rows: Vec<Vec<Rat>> = self.amb_basis[a.degree]
            .iter()
            .map(|&i| linalg::rvec_of(&self.pairing[a.degree][i]))
            .collect();
        linalg::coords_in_rows(&rows, &a.functional).ok_or_else(|| {
            Error::SpanFailure(format!(
                "degree-{} functional lies outside the ambient span",
                a.degree
            ))
        })
    }

    pub fn class_from_coords(&self, degree: usize, coords: &[Rat]) -> Result<AmbClass> {
        if degree > self.dim() {
            return Ok(self.zero_class(degree));
        }
        if coords.len() != self.amb_dim(degree) {
            return Err(Error::SubspaceDimMismatch(format!(
                "{} coordinates for ambient dimension {}",
                coords.len(),
                self.amb_dim(degree)
            )));
        }
        let mut total = self.zero_class(degree);
        for (c, &i) in coords.iter().zip(&self.amb_basis[degree]) {
            let row: Vec<Rat> = linalg::rvec_of(&self.pairing[degree][i]);
            let term = AmbClass { degree, functional: row }.scale(c);
            total = total.add(&term)?;
        }
        Ok(total)
    }

    /// Cup product on the ambient ring.
    pub fn cup(&self, a: &AmbClass, b: &AmbClass) -> Result<AmbClass> {
        let degree = a.degree + b.degree;
        if degree > self.dim() || a.degree > self.dim() || b.degree > self.dim() {
            return Ok(self.zero_class(degree));
        }
        let ca = self.coords(a)?;
        let cb = self.coords(b)?;
        let mut functional = vec![Rat::zero(); self.monomials[self.dim() - degree].len()];
        for (xa, &ia) in ca.iter().zip(&self.amb_basis[a.degree]) {
            if xa.is_zero() {
                continue;
            }
            for (xb, &ib) in cb.iter().zip(&self.amb_basis[b.degree]) {
                if xb.is_zero() {
                    continue;
                }
                let coeff = xa * xb;
                for (slot, u) in self.monomials[self.dim() - degree].iter().enumerate() {
                    let mut key = self.monomials[a.degree][ia].clone();
                    key.extend(&self.monomials[b.degree][ib]);
                    key.extend(u);
                    let v = self.intersection_with_hypersurface_multiset(&key)?;
                    functional[slot] += &coeff * linalg::rat_of(&v);
                }
            }
        }
        Ok(AmbClass { degree, functional })
    }

    /// Integral over the hypersurface of a top-degree class.
    pub fn integral(&self, a: &AmbClass) -> Result<Rat> {
        if a.degree != self.dim() {
            return Err(Error::SubspaceDimMismatch(format!(
                "integrand has degree {}, expected {}",
                a.degree,
                self.dim()
            )));
        }
        Ok(a.functional[0].clone())
    }

    /// Top self-intersection of the restricted anticanonical class.
    pub fn anticanonical_power_integral(&self) -> Result<Rat> {
        let a = self.anticanonical_class();
        let mut power = self.one();
        for _ in 0..self.dim() {
            power = self.cup(&power, &a)?;
        }
        self.integral(&power)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, ivec, rat};

    fn p2() -> Fan {
        Fan::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap()
    }

    fn p3() -> Fan {
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

    fn octahedron() -> Fan {
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

    fn p4() -> Fan {
        Fan::new(
            4,
            vec![
                ivec(&[1, 0, 0, 0]),
                ivec(&[0, 1, 0, 0]),
                ivec(&[0, 0, 1, 0]),
                ivec(&[0, 0, 0, 1]),
                ivec(&[-1, -1, -1, -1]),
            ],
            vec![
                vec![0, 1, 2, 3],
                vec![0, 1, 2, 4],
                vec![0, 1, 3, 4],
                vec![0, 2, 3, 4],
                vec![1, 2, 3, 4],
            ],
        )
        .unwrap()
    }

    #[test]
    fn projective_plane_numbers() {
        let t = ToricModel::new(&p2()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(t.intersection_number(&[i, j]).unwrap(), int(1));
            }
            assert_eq!(t.intersection_with_hypersurface(&[i]).unwrap(), int(3));
        }
    }

    #[test]
    fn projective_space_pair_table() {
        let t = ToricModel::new(&p3()).unwrap();
        for pair in (0..4).combinations_with_replacement(2) {
            assert_eq!(
                t.intersection_with_hypersurface(&pair).unwrap(),
                int(4),
                "pair {pair:?}"
            );
        }
    }

    #[test]
    fn triple_line_pair_table() {
        let t = ToricModel::new(&octahedron()).unwrap();
        let axis = |r: usize| r / 2;
        let mut same = 0;
        let mut cross = 0;
        for pair in (0..6).combinations_with_replacement(2) {
            let v = t.intersection_with_hypersurface(&pair).unwrap();
            if axis(pair[0]) == axis(pair[1]) {
                assert_eq!(v, int(0), "pair {pair:?}");
                same += 1;
            } else {
                assert_eq!(v, int(2), "pair {pair:?}");
                cross += 1;
            }
        }
        assert_eq!((same, cross), (9, 12));
    }

    #[test]
    fn anticanonical_top_powers() {
        assert_eq!(
            ToricModel::new(&p2()).unwrap().anticanonical_power_integral().unwrap(),
            rat(9)
        );
        assert_eq!(
            ToricModel::new(&p3()).unwrap().anticanonical_power_integral().unwrap(),
            rat(64)
        );
        assert_eq!(
            ToricModel::new(&octahedron()).unwrap().anticanonical_power_integral().unwrap(),
            rat(48)
        );
    }

    #[test]
    fn ambient_dimensions() {
        assert_eq!(ToricModel::new(&p2()).unwrap().amb_dims(), vec![1, 1]);
        assert_eq!(ToricModel::new(&p3()).unwrap().amb_dims(), vec![1, 1, 1]);
        assert_eq!(ToricModel::new(&octahedron()).unwrap().amb_dims(), vec![1, 3, 1]);
        assert_eq!(ToricModel::new(&p4()).unwrap().amb_dims(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn character_divisors_are_trivial() {
        for fan in [p2(), p3(), octahedron()] {
            let t = ToricModel::new(&fan).unwrap();
            let rank = fan.rank();
            for i in 0..rank {
                let e: Vec<Int> =
                    (0..rank).map(|j| if i == j { Int::one() } else { Int::zero() }).collect();
                for tail in (0..fan.rays().len()).combinations_with_replacement(rank - 1) {
                    let mut total = Int::zero();
                    for rho in 0..fan.rays().len() {
                        let coeff = linalg::dot(fan.ray(rho), &e);
                        if coeff.is_zero() {
                            continue;
                        }
                        let mut key = tail.clone();
                        key.push(rho);
                        total += coeff * t.intersection_number(&key).unwrap();
                    }
                    assert_eq!(total, int(0), "character {i} tail {tail:?}");
                }
            }
        }
    }

    #[test]
    fn reduction_is_choice_independent() {
        for fan in [p3(), octahedron()] {
            let t = ToricModel::new(&fan).unwrap();
            for key in (0..fan.rays().len()).combinations_with_replacement(fan.rank()) {
                let reference = t.intersection_number(&key).unwrap();
                for seed in [7u64, 1312, 271828] {
                    let mut choices = SeededChoice::new(seed);
                    assert_eq!(
                        t.intersection_number_with(&key, &mut choices).unwrap(),
                        reference,
                        "multiset {key:?} seed {seed}"
                    );
                }
            }
        }
    }

    #[test]
    fn repeated_monomial_class_matches_cup_power() {
        let t = ToricModel::new(&octahedron()).unwrap();
        let d0 = t.divisor_class(0).unwrap();
        let via_cup = t.cup(&d0, &d0).unwrap();
        let direct = t.class_from_monomial(&[0, 0]).unwrap();
        assert_eq!(via_cup, direct);
    }

    #[test]
    fn opposite_rays_restrict_to_the_same_class() {
        let t = ToricModel::new(&octahedron()).unwrap();
        assert_eq!(t.divisor_class(0).unwrap(), t.divisor_class(1).unwrap());
        assert_ne!(t.divisor_class(0).unwrap(), t.divisor_class(2).unwrap());
    }

    #[test]
    fn coordinates_round_trip() {
        let t = ToricModel::new(&octahedron()).unwrap();
        let a = t
            .divisor_class(0)
            .unwrap()
            .add(&t.divisor_class(2).unwrap().scale(&rat(3)))
            .unwrap();
        let coords = t.coords(&a).unwrap();
        assert_eq!(coords.len(), 3);
        let back = t.class_from_coords(1, &coords).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn degree_bookkeeping() {
        let t = ToricModel::new(&p2()).unwrap();
        let d = t.divisor_class(0).unwrap();
        let top = t.cup(&d, &d).unwrap();
        assert_eq!(top.degree(), 2);
        assert!(top.is_zero());
        assert!(t.integral(&d).is_ok());
        assert!(matches!(t.integral(&t.one()), Err(Error::SubspaceDimMismatch(_))));
        assert!(matches!(
            t.intersection_number(&[0]),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            t.intersection_number(&[0, 99]),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn rejects_bad_fans() {
        let non_unimodular = Fan::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[1, 2]), ivec(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        assert!(matches!(
            ToricModel::new(&non_unimodular),
            Err(Error::NotUnimodular(_))
        ));
        let incomplete = Fan::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        assert!(matches!(ToricModel::new(&incomplete), Err(Error::MalformedFan(_))));
    }
}
