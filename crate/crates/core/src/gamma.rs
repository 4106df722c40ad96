//! Characteristic classes of the hypersurface, the Gamma-corrected
//! bundle vectors, and the lattice they generate inside the Hodge
//! structure.  The monodromy acts on this lattice by an integer
//! unipotent matrix and the pairing restricts to an integer form.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::cnum::{self, C};
use crate::error::{Error, Result};
use crate::linalg::{self, Int, Rat};
use crate::plh::{two_pi_i_pow, PlhData, ScaledScalar};
use crate::radiance;
use crate::sphere::SphereComplex;
use crate::toric::{AmbClass, ToricModel};

/// A cohomology class with components in every degree `0..=dim`.
pub type MixedClass = Vec<AmbClass>;

pub fn mixed_zero(model: &ToricModel) -> MixedClass {
    (0..=model.dim()).map(|k| model.zero_class(k)).collect()
}

pub fn mixed_one(model: &ToricModel) -> MixedClass {
    let mut out = mixed_zero(model);
    out[0] = model.one();
    out
}

pub fn mixed_add(a: &MixedClass, b: &MixedClass) -> Result<MixedClass> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn mixed_sub(a: &MixedClass, b: &MixedClass) -> Result<MixedClass> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn mixed_cup(model: &ToricModel, a: &MixedClass, b: &MixedClass) -> Result<MixedClass> {
    let mut out = mixed_zero(model);
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j > model.dim() || y.is_zero() {
                continue;
            }
            let product = model.cup(x, y)?;
            out[i + j] = out[i + j].add(&product)?;
        }
    }
    Ok(out)
}

/// Chern character `exp(c)` of a line bundle with first Chern class `c`.
pub fn exp_class(model: &ToricModel, c: &AmbClass) -> Result<MixedClass> {
    if c.degree() != 1 {
        return Err(Error::SubspaceDimMismatch(format!(
            "exponential of a degree-{} class",
            c.degree()
        )));
    }
    let mut out = mixed_one(model);
    let mut power = model.one();
    let mut factorial = Rat::one();
    for k in 1..=model.dim() {
        power = model.cup(&power, c)?;
        factorial *= linalg::rat(k as i64);
        out[k] = power.scale(&(Rat::one() / &factorial));
    }
    Ok(out)
}

/// Chern character of the tangent bundle of the hypersurface: the
/// restricted toric Euler sequence minus the normal line bundle.
pub fn tangent_chern_character(
    sphere: &SphereComplex,
    model: &ToricModel,
) -> Result<MixedClass> {
    let fan = sphere.fan();
    let mut total = mixed_zero(model);
    for ray in 0..fan.rays().len() {
        let e = exp_class(model, &model.divisor_class(ray)?)?;
        total = mixed_add(&total, &e)?;
    }
    let excess = linalg::rat((fan.rays().len() - fan.rank()) as i64);
    total[0] = total[0].sub(&model.one().scale(&excess))?;
    let normal = exp_class(model, &radiance::radiance_class(sphere, model)?)?;
    mixed_sub(&total, &normal)
}

/// Chern classes recovered from a Chern character, through degree 3.
pub fn chern_classes(model: &ToricModel, ch: &MixedClass) -> Result<Vec<AmbClass>> {
    let d = model.dim();
    if d > 3 {
        return Err(Error::OutOfRange(format!(
            "Chern class recovery implemented through degree 3, got {d}"
        )));
    }
    let mut c = vec![model.one()];
    if d >= 1 {
        c.push(ch[1].clone());
    }
    if d >= 2 {
        let c1_sq = model.cup(&c[1], &c[1])?;
        c.push(c1_sq.scale(&(Rat::one() / linalg::rat(2))).sub(&ch[2])?);
    }
    if d >= 3 {
        let c1_sq = model.cup(&c[1], &c[1])?;
        let c1_cube = model.cup(&c1_sq, &c[1])?;
        let c1_ch2 = model.cup(&c[1], &ch[2])?;
        let c3 = ch[3]
            .scale(&linalg::rat(2))
            .add(&c1_cube.scale(&(Rat::one() / linalg::rat(6))))?
            .sub(&c1_ch2)?;
        c.push(c3);
    }
    Ok(c)
}

/// Integral of the top Chern class of the tangent bundle.
pub fn euler_number(sphere: &SphereComplex, model: &ToricModel) -> Result<Rat> {
    let ch = tangent_chern_character(sphere, model)?;
    let c = chern_classes(model, &ch)?;
    model.integral(&c[model.dim()])
}

/// The Gamma class of the tangent bundle truncated to the surface
/// range: `1 + c2/24`.  The degree-3 term carries a zeta value and is
/// outside the exact path, and a nonvanishing first Chern class would
/// bring in the Euler constant, so both are rejected.
pub fn gamma_class(model: &ToricModel, tangent_ch: &MixedClass) -> Result<MixedClass> {
    let d = model.dim();
    if d > 2 {
        return Err(Error::OutOfRange(format!(
            "exact Gamma class limited to curve and surface fibers, got dimension {d}"
        )));
    }
    if !tangent_ch[1].is_zero() {
        return Err(Error::NonVanishingChern(
            "tangent bundle has nonzero first Chern class".into(),
        ));
    }
    let mut out = mixed_one(model);
    if d >= 2 {
        out[2] = tangent_ch[2].scale(&-(Rat::one() / linalg::rat(24)));
    }
    Ok(out)
}

/// Coordinates of a mixed class in the concatenated degree-block
/// basis; the degree-`k` block carries an implicit `(2 pi i)^(k - d)`.
pub fn graded_coordinates(model: &ToricModel, mixed: &MixedClass) -> Result<Vec<Rat>> {
    let mut out = Vec::new();
    for slot in mixed {
        out.extend(model.coords(slot)?);
    }
    Ok(out)
}

/// Bundle vector: graded coordinates of `Gamma ∪ ch(E)`.
pub fn bundle_vector(
    model: &ToricModel,
    gamma: &MixedClass,
    bundle_ch: &MixedClass,
) -> Result<Vec<Rat>> {
    graded_coordinates(model, &mixed_cup(model, gamma, bundle_ch)?)
}

/// Scaled-scalar view of graded coordinates.
pub fn graded_to_scaled(coords: &[Rat], degrees: &[usize], d: usize) -> Vec<ScaledScalar> {
    coords
        .iter()
        .zip(degrees)
        .map(|(r, &k)| ScaledScalar::exact(r.clone(), k as i32 - d as i32))
        .collect()
}

/// The lattice generated by the bundle vectors of the restricted
/// line bundles `O(-D_S)` over the cone-spanning square-free sets.
#[derive(Debug, Clone)]
pub struct GammaLattice {
    dim_y: usize,
    n: usize,
    degrees: Vec<usize>,
    generators: Vec<Vec<Rat>>,
    basis: Vec<Vec<Rat>>,
    structure_sheaf: Vec<Rat>,
}

#[derive(Debug, Clone)]
pub struct GammaReport {
    pub monodromy_integral: bool,
    pub monodromy_unipotent: bool,
    pub monodromy_det_one: bool,
    pub gram_integral: bool,
    pub gram_symmetric: bool,
    pub structure_sheaf_self_pairing: Rat,
    pub numeric_monodromy_error: f64,
    pub conjugation_matches_graded_signs: bool,
}

impl GammaReport {
    pub fn all_hold(&self) -> bool {
        self.monodromy_integral
            && self.monodromy_unipotent
            && self.monodromy_det_one
            && self.gram_integral
            && self.gram_symmetric
            && self.numeric_monodromy_error < 1e-9
            && self.conjugation_matches_graded_signs
    }
}

pub fn build_gamma_lattice(
    sphere: &SphereComplex,
    model: &ToricModel,
) -> Result<GammaLattice> {
    let d = model.dim();
    let tangent_ch = tangent_chern_character(sphere, model)?;
    let gamma = gamma_class(model, &tangent_ch)?;

    let mut degrees = Vec::new();
    for (k, dk) in model.amb_dims().into_iter().enumerate() {
        degrees.extend(std::iter::repeat(k).take(dk));
    }
    let n = degrees.len();

    let mut generators: Vec<Vec<Rat>> = Vec::new();
    let mut structure_sheaf = None;
    for k in 0..=d {
        for support in model.monomials(k).to_vec() {
            let mut divisor = model.zero_class(1);
            for &ray in &support {
                divisor = divisor.add(&model.divisor_class(ray)?)?;
            }
            let ch = exp_class(model, &divisor.neg())?;
            let v = bundle_vector(model, &gamma, &ch)?;
            if support.is_empty() {
                structure_sheaf = Some(v.clone());
            }
            generators.push(v);
        }
    }
    let structure_sheaf = structure_sheaf.expect("empty support set is cone-spanning");

    let mut denominator = Int::one();
    for g in &generators {
        for x in g {
            denominator = denominator.lcm(x.denom());
        }
    }
    let scale = Rat::from_integer(denominator.clone());
    let columns: Vec<Vec<Int>> = (0..n)
        .map(|i| generators.iter().map(|g| (&g[i] * &scale).to_integer()).collect())
        .collect();
    let hnf = linalg::col_hnf(&columns);
    if hnf.pivots.len() != n {
        return Err(Error::SpanFailure(format!(
            "bundle vectors span rank {} inside dimension {}",
            hnf.pivots.len(),
            n
        )));
    }
    let basis: Vec<Vec<Rat>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| Rat::new(hnf.h[i][j].clone(), denominator.clone()))
                .collect()
        })
        .collect();

    Ok(GammaLattice { dim_y: d, n, degrees, generators, basis, structure_sheaf })
}

impl GammaLattice {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn generators(&self) -> &[Vec<Rat>] {
        &self.generators
    }

    /// Z-module basis in graded coordinates, in Hermite form.
    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn structure_sheaf_vector(&self) -> &[Rat] {
        &self.structure_sheaf
    }

    fn basis_matrix(&self) -> Vec<Vec<Rat>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.basis[j][i].clone()).collect())
            .collect()
    }

    /// Coordinates of a graded vector in the lattice basis.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        linalg::solve_rat(&self.basis_matrix(), v)
    }

    /// Complex rows of the basis with the grading scale made explicit.
    pub fn numeric_rows(&self) -> Vec<Vec<C>> {
        self.basis
            .iter()
            .map(|b| {
                b.iter()
                    .zip(&self.degrees)
                    .map(|(r, &k)| {
                        let x = r.numer().to_f64().expect("desk-scale")
                            / r.denom().to_f64().expect("desk-scale");
                        two_pi_i_pow(k as i32 - self.dim_y as i32) * x
                    })
                    .collect()
            })
            .collect()
    }

    /// `exp(-N)` in graded coordinates: the monodromy with the scale
    /// powers absorbed into the grading.
    fn graded_monodromy(&self, plh: &PlhData) -> Vec<Vec<Rat>> {
        let nilpotent = plh.nilpotent_operator();
        let mut out = linalg::identity_rat(self.n);
        let mut power = linalg::identity_rat(self.n);
        let mut factorial = Rat::one();
        for k in 1..=self.dim_y {
            power = linalg::mat_mul_rat(&power, nilpotent);
            factorial *= linalg::rat(k as i64);
            let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
            let coeff = sign / &factorial;
            for i in 0..self.n {
                for j in 0..self.n {
                    let t = &power[i][j] * &coeff;
                    out[i][j] += t;
                }
            }
        }
        out
    }

    /// Monodromy written in the lattice basis.
    pub fn monodromy_in_basis(&self, plh: &PlhData) -> Result<Vec<Vec<Rat>>> {
        let b = self.basis_matrix();
        let b_inv = linalg::invert_rat(&b)
            .ok_or_else(|| Error::SpanFailure("lattice basis is singular".into()))?;
        let m = self.graded_monodromy(plh);
        Ok(linalg::mat_mul_rat(&b_inv, &linalg::mat_mul_rat(&m, &b)))
    }

    /// Pairing of two graded vectors; the grading scales cancel
    /// against the `(2 pi i)^d` of the pairing, leaving a rational.
    pub fn pair_graded(&self, plh: &PlhData, u: &[Rat], v: &[Rat]) -> Rat {
        let q = plh.pairing_matrix();
        let mut acc = Rat::zero();
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if !q[i][j].is_zero() {
                    acc += ui * q[i][j].rational() * vj;
                }
            }
        }
        acc
    }

    pub fn gram_matrix(&self, plh: &PlhData) -> Vec<Vec<Rat>> {
        self.basis
            .iter()
            .map(|u| self.basis.iter().map(|v| self.pair_graded(plh, u, v)).collect())
            .collect()
    }

    pub fn lattice_checks(&self, plh: &PlhData) -> Result<GammaReport> {
        let t = self.monodromy_in_basis(plh)?;
        let monodromy_integral = t.iter().flatten().all(|x| x.denom().is_one());

        let mut shifted = t.clone();
        for i in 0..self.n {
            shifted[i][i] -= Rat::one();
        }
        let mut power = shifted.clone();
        for _ in 0..self.dim_y {
            power = linalg::mat_mul_rat(&power, &shifted);
        }
        let monodromy_unipotent = power.iter().flatten().all(|x| x.is_zero());

        let monodromy_det_one = if monodromy_integral {
            let as_int: Vec<Vec<Int>> =
                t.iter().map(|row| row.iter().map(|x| x.to_integer()).collect()).collect();
            linalg::det_int(&as_int).is_one()
        } else {
            false
        };

        let gram = self.gram_matrix(plh);
        let gram_integral = gram.iter().flatten().all(|x| x.denom().is_one());
        let sign = if self.dim_y % 2 == 0 { Rat::one() } else { -Rat::one() };
        let mut gram_symmetric = true;
        for i in 0..self.n {
            for j in 0..self.n {
                if gram[i][j] != &gram[j][i] * &sign {
                    gram_symmetric = false;
                }
            }
        }

        let structure_sheaf_self_pairing =
            self.pair_graded(plh, &self.structure_sheaf, &self.structure_sheaf);

        // float the whole conjugation: the numeric monodromy in the
        // numeric lattice basis must land on the exact integer matrix
        let rows = self.numeric_rows();
        let g: Vec<Vec<C>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| rows[j][i]).collect())
            .collect();
        let g_inv = cnum::invert(&g, 1e-12)
            .ok_or_else(|| Error::SpanFailure("numeric lattice basis is singular".into()))?;
        let t_exact = plh.monodromy_matrix();
        let t_num: Vec<Vec<C>> = t_exact
            .iter()
            .map(|row| row.iter().map(|x| x.exact_numeric()).collect())
            .collect();
        let conjugated = cnum::mat_mul(&g_inv, &cnum::mat_mul(&t_num, &g));
        let mut numeric_monodromy_error = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                let exact = t[i][j].numer().to_f64().expect("desk-scale")
                    / t[i][j].denom().to_f64().expect("desk-scale");
                numeric_monodromy_error =
                    numeric_monodromy_error.max((conjugated[i][j] - C::new(exact, 0.0)).norm());
            }
        }

        // conjugation against the lattice span equals the graded signs
        let mut conjugation_matches_graded_signs = true;
        for i in 0..self.n {
            let mut e = vec![C::zero(); self.n];
            e[i] = C::new(1.0, 0.0);
            let coords = cnum::mat_vec(&g_inv, &e);
            let conj: Vec<C> = coords.iter().map(|x| x.conj()).collect();
            let back = cnum::mat_vec(&g, &conj);
            let expected_sign = if (self.dim_y - self.degrees[i]) % 2 == 0 { 1.0 } else { -1.0 };
            for (j, x) in back.iter().enumerate() {
                let expected = if j == i { C::new(expected_sign, 0.0) } else { C::zero() };
                if (x - expected).norm() > 1e-9 {
                    conjugation_matches_graded_signs = false;
                }
            }
        }

        Ok(GammaReport {
            monodromy_integral,
            monodromy_unipotent,
            monodromy_det_one,
            gram_integral,
            gram_symmetric,
            structure_sheaf_self_pairing,
            numeric_monodromy_error,
            conjugation_matches_graded_signs,
        })
    }
}
