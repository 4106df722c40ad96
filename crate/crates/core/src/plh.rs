//! The polarized logarithmic Hodge structure attached to the sphere:
//! nilpotent operator, limit filtration, pairing, monodromy, and the
//! positivity sweep along the nilpotent orbit.
//!
//! Scalars are kept exact as `rational * (2 pi i)^power` with a
//! floating mirror carried through every operation; the mirror must
//! stay within `1e-12` of the exact value.

use std::fmt;

use num_traits::{One, ToPrimitive, Zero};

use crate::cnum::{self, C};
use crate::error::{Error, Result};
use crate::linalg::{self, Rat};
use crate::radiance;
use crate::sphere::SphereComplex;
use crate::toric::{AmbClass, ToricModel};

fn rat_to_f64(r: &Rat) -> f64 {
    let n = r.numer().to_f64().expect("desk-scale numerator");
    let d = r.denom().to_f64().expect("desk-scale denominator");
    n / d
}

/// `(2 pi i)^p` as a complex number.
pub fn two_pi_i_pow(p: i32) -> C {
    let magnitude = (2.0 * std::f64::consts::PI).powi(p);
    let unit = match p.rem_euclid(4) {
        0 => C::new(1.0, 0.0),
        1 => C::new(0.0, 1.0),
        2 => C::new(-1.0, 0.0),
        _ => C::new(0.0, -1.0),
    };
    magnitude * unit
}

/// Exact scalar `rational * (2 pi i)^power` with a numeric mirror.
#[derive(Debug, Clone)]
pub struct ScaledScalar {
    rational: Rat,
    power: i32,
    numeric_re: u64,
    numeric_im: u64,
}

impl PartialEq for ScaledScalar {
    fn eq(&self, other: &ScaledScalar) -> bool {
        self.rational == other.rational && (self.is_zero() || self.power == other.power)
    }
}

impl Eq for ScaledScalar {}

// The numeric mirror is stored as bit patterns so the scalar stays Eq;
// equality itself only inspects the exact part.
impl ScaledScalar {
    pub fn exact(rational: Rat, power: i32) -> ScaledScalar {
        let numeric = if rational.is_zero() {
            C::zero()
        } else {
            two_pi_i_pow(power) * rat_to_f64(&rational)
        };
        ScaledScalar::with_numeric(rational, power, numeric)
    }

    fn with_numeric(rational: Rat, power: i32, numeric: C) -> ScaledScalar {
        let (rational, power) = if rational.is_zero() {
            (Rat::zero(), 0)
        } else {
            (rational, power)
        };
        ScaledScalar {
            rational,
            power,
            numeric_re: numeric.re.to_bits(),
            numeric_im: numeric.im.to_bits(),
        }
    }

    pub fn zero() -> ScaledScalar {
        ScaledScalar::exact(Rat::zero(), 0)
    }

    pub fn from_int(x: i64) -> ScaledScalar {
        ScaledScalar::exact(linalg::rat(x), 0)
    }

    pub fn rational(&self) -> &Rat {
        &self.rational
    }

    pub fn power(&self) -> i32 {
        self.power
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }

    /// The numeric mirror accumulated through floating arithmetic.
    pub fn numeric(&self) -> C {
        C::new(f64::from_bits(self.numeric_re), f64::from_bits(self.numeric_im))
    }

    /// The numeric value recomputed from the exact data.
    pub fn exact_numeric(&self) -> C {
        if self.rational.is_zero() {
            C::zero()
        } else {
            two_pi_i_pow(self.power) * rat_to_f64(&self.rational)
        }
    }

    /// The mirror must match the exact value to relative `tol`.
    pub fn consistent(&self, tol: f64) -> bool {
        let exact = self.exact_numeric();
        (self.numeric() - exact).norm() <= tol * exact.norm().max(1.0)
    }

    pub fn add(&self, other: &ScaledScalar) -> Result<ScaledScalar> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.power != other.power {
            return Err(Error::DegreeOverflow(format!(
                "cannot add scalars of scale powers {} and {}",
                self.power, other.power
            )));
        }
        Ok(ScaledScalar::with_numeric(
            &self.rational + &other.rational,
            self.power,
            self.numeric() + other.numeric(),
        ))
    }

    pub fn mul(&self, other: &ScaledScalar) -> ScaledScalar {
        ScaledScalar::with_numeric(
            &self.rational * &other.rational,
            if self.is_zero() || other.is_zero() { 0 } else { self.power + other.power },
            self.numeric() * other.numeric(),
        )
    }

    pub fn neg(&self) -> ScaledScalar {
        ScaledScalar::with_numeric(-self.rational.clone(), self.power, -self.numeric())
    }

    pub fn scale_rat(&self, c: &Rat) -> ScaledScalar {
        ScaledScalar::with_numeric(
            &self.rational * c,
            self.power,
            self.numeric() * rat_to_f64(c),
        )
    }
}

impl fmt::Display for ScaledScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else if self.power == 0 {
            write!(f, "{}", self.rational)
        } else {
            write!(f, "{}*(2*pi*i)^{}", self.rational, self.power)
        }
    }
}

pub type ScaledMatrix = Vec<Vec<ScaledScalar>>;

pub fn scaled_mat_mul(a: &ScaledMatrix, b: &ScaledMatrix) -> Result<ScaledMatrix> {
    let cols = b[0].len();
    let mut out = Vec::with_capacity(a.len());
    for row in a {
        let mut new_row = Vec::with_capacity(cols);
        for j in 0..cols {
            let mut acc = ScaledScalar::zero();
            for (x, brow) in row.iter().zip(b) {
                acc = acc.add(&x.mul(&brow[j]))?;
            }
            new_row.push(acc);
        }
        out.push(new_row);
    }
    Ok(out)
}

pub fn scaled_transpose(a: &ScaledMatrix) -> ScaledMatrix {
    let rows = a.len();
    let cols = a[0].len();
    (0..cols).map(|j| (0..rows).map(|i| a[i][j].clone()).collect()).collect()
}

/// Polarized logarithmic Hodge structure on the ambient cohomology,
/// in the concatenated degree-block basis.
#[derive(Debug, Clone)]
pub struct PlhData {
    dim_y: usize,
    dims: Vec<usize>,
    degrees: Vec<usize>,
    n: usize,
    nilpotent: Vec<Vec<Rat>>,
    q: ScaledMatrix,
}

pub fn build_plh(sphere: &SphereComplex, model: &ToricModel) -> Result<PlhData> {
    let d = model.dim();
    let dims = model.amb_dims();
    let mut offsets = vec![0usize; d + 1];
    for k in 1..=d {
        offsets[k] = offsets[k - 1] + dims[k - 1];
    }
    let n: usize = dims.iter().sum();
    let mut degrees = Vec::with_capacity(n);
    for (k, &dk) in dims.iter().enumerate() {
        degrees.extend(std::iter::repeat(k).take(dk));
    }

    let mut basis_classes: Vec<AmbClass> = Vec::with_capacity(n);
    for (k, &dk) in dims.iter().enumerate() {
        for i in 0..dk {
            let coords: Vec<Rat> =
                (0..dk).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect();
            basis_classes.push(model.class_from_coords(k, &coords)?);
        }
    }

    let c = radiance::radiance_class(sphere, model)?;
    let mut nilpotent = vec![vec![Rat::zero(); n]; n];
    for (j, b) in basis_classes.iter().enumerate() {
        let k = degrees[j];
        if k == d {
            continue;
        }
        let image = model.cup(&c, b)?;
        let coords = model.coords(&image)?;
        for (i, x) in coords.iter().enumerate() {
            nilpotent[offsets[k + 1] + i][j] = x.clone();
        }
    }

    let mut q = vec![vec![ScaledScalar::zero(); n]; n];
    for (i, bi) in basis_classes.iter().enumerate() {
        for (j, bj) in basis_classes.iter().enumerate() {
            if degrees[i] + degrees[j] != d {
                continue;
            }
            let product = model.cup(bi, bj)?;
            let mut value = model.integral(&product)?;
            if degrees[i] % 2 == 1 {
                value = -value;
            }
            q[i][j] = ScaledScalar::exact(value, d as i32);
        }
    }

    Ok(PlhData { dim_y: d, dims, degrees, n, nilpotent, q })
}

#[derive(Debug, Clone)]
pub struct StructureReport {
    pub filtration_dims: Vec<usize>,
    pub griffiths_transversality: bool,
    pub orthogonality: bool,
    pub pairing_symmetry: bool,
    pub nilpotent_isometry: bool,
    pub monodromy_isometry: bool,
    pub scalar_consistency: bool,
    pub corrupted_filtration_detected: bool,
}

impl StructureReport {
    pub fn all_hold(&self) -> bool {
        self.griffiths_transversality
            && self.orthogonality
            && self.pairing_symmetry
            && self.nilpotent_isometry
            && self.monodromy_isometry
            && self.scalar_consistency
            && self.corrupted_filtration_detected
    }
}

#[derive(Debug, Clone)]
pub struct SweepBlock {
    pub p: usize,
    pub q: usize,
    pub dim: usize,
    pub min_eigenvalue: f64,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub y: f64,
    pub blocks: Vec<SweepBlock>,
    pub min_eigenvalue: f64,
}

impl PlhData {
    /// Dimension of the underlying hypersurface.
    pub fn dim_y(&self) -> usize {
        self.dim_y
    }

    /// Block dimensions by degree.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn nilpotent_operator(&self) -> &Vec<Vec<Rat>> {
        &self.nilpotent
    }

    pub fn pairing_matrix(&self) -> &ScaledMatrix {
        &self.q
    }

    /// Pairing of two coordinate vectors of scaled scalars.
    pub fn pair(&self, u: &[ScaledScalar], v: &[ScaledScalar]) -> Result<ScaledScalar> {
        let mut acc = ScaledScalar::zero();
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                acc = acc.add(&ui.mul(&self.q[i][j]).mul(vj))?;
            }
        }
        Ok(acc)
    }

    pub fn pair_rational(&self, u: &[Rat], v: &[Rat]) -> Result<ScaledScalar> {
        let us: Vec<ScaledScalar> =
            u.iter().map(|x| ScaledScalar::exact(x.clone(), 0)).collect();
        let vs: Vec<ScaledScalar> =
            v.iter().map(|x| ScaledScalar::exact(x.clone(), 0)).collect();
        self.pair(&us, &vs)
    }

    fn nilpotent_powers(&self) -> Vec<Vec<Vec<Rat>>> {
        let mut powers = vec![linalg::identity_rat(self.n)];
        for _ in 0..self.dim_y {
            let prev = powers.last().expect("nonempty");
            powers.push(linalg::mat_mul_rat(prev, &self.nilpotent));
        }
        powers
    }

    /// Monodromy `exp(-2 pi i N)`: block `k` degrees above the diagonal
    /// carries scale power `k`.
    pub fn monodromy_matrix(&self) -> ScaledMatrix {
        let powers = self.nilpotent_powers();
        let mut t = vec![vec![ScaledScalar::zero(); self.n]; self.n];
        let mut factorial = Rat::one();
        for (k, nk) in powers.iter().enumerate() {
            if k > 0 {
                factorial *= linalg::rat(k as i64);
            }
            let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
            for i in 0..self.n {
                for j in 0..self.n {
                    if nk[i][j].is_zero() {
                        continue;
                    }
                    let r = &sign * &nk[i][j] / &factorial;
                    t[i][j] = ScaledScalar::exact(r, k as i32);
                }
            }
        }
        t
    }

    /// Basis of `F^p`: the coordinate vectors of degrees up to `d - p`.
    pub fn filtration_basis(&self, p: usize) -> Result<Vec<Vec<Rat>>> {
        if p > self.dim_y + 1 {
            return Err(Error::OutOfRange(format!(
                "filtration index {p} exceeds {}",
                self.dim_y + 1
            )));
        }
        if p == self.dim_y + 1 {
            return Ok(Vec::new());
        }
        let max_degree = self.dim_y - p;
        Ok((0..self.n)
            .filter(|&i| self.degrees[i] <= max_degree)
            .map(|i| {
                (0..self.n)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect())
    }

    fn griffiths_holds(&self) -> Result<bool> {
        for p in 1..=self.dim_y + 1 {
            let upper = self.filtration_basis(p)?;
            let lower = self.filtration_basis(p - 1)?;
            for v in &upper {
                let image = linalg::mat_vec_rat(&self.nilpotent, v);
                if linalg::coords_in_rows(&lower, &image).is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn orthogonality_holds_for(&self, filtration: &dyn Fn(usize) -> Result<Vec<Vec<Rat>>>) -> Result<bool> {
        for p in 0..=self.dim_y + 1 {
            let a = filtration(p)?;
            let b = filtration(self.dim_y + 1 - p)?;
            for u in &a {
                for w in &b {
                    if !self.pair_rational(u, w)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// All structural properties of the package, each verified by
    /// explicit linear algebra, together with a deliberately corrupted
    /// filtration that the orthogonality test must reject.
    pub fn structure_checks(&self) -> Result<StructureReport> {
        let filtration_dims: Vec<usize> = (0..=self.dim_y + 1)
            .map(|p| self.filtration_basis(p).map(|b| b.len()))
            .collect::<Result<_>>()?;

        let griffiths_transversality = self.griffiths_holds()?;
        let orthogonality =
            self.orthogonality_holds_for(&|p| self.filtration_basis(p))?;

        let mut pairing_symmetry = true;
        let sign = if self.dim_y % 2 == 0 { Rat::one() } else { -Rat::one() };
        for i in 0..self.n {
            for j in 0..self.n {
                let flipped = self.q[j][i].scale_rat(&sign);
                if self.q[i][j] != flipped {
                    pairing_symmetry = false;
                }
            }
        }

        let n_scaled: ScaledMatrix = self
            .nilpotent
            .iter()
            .map(|row| row.iter().map(|x| ScaledScalar::exact(x.clone(), 0)).collect())
            .collect();
        let nt_q = scaled_mat_mul(&scaled_transpose(&n_scaled), &self.q)?;
        let q_n = scaled_mat_mul(&self.q, &n_scaled)?;
        let mut nilpotent_isometry = true;
        for i in 0..self.n {
            for j in 0..self.n {
                if !nt_q[i][j].add(&q_n[i][j])?.is_zero() {
                    nilpotent_isometry = false;
                }
            }
        }

        let t = self.monodromy_matrix();
        let ttqt = scaled_mat_mul(&scaled_mat_mul(&scaled_transpose(&t), &self.q)?, &t)?;
        let monodromy_isometry = ttqt == self.q;

        let mut scalar_consistency = true;
        for m in [&self.q, &t] {
            for row in m {
                for x in row {
                    if !x.consistent(1e-12) {
                        scalar_consistency = false;
                    }
                }
            }
        }
        // the same isometry product in pure floating arithmetic, with a
        // tolerance set by the magnitude of the intermediate products
        let t_num: Vec<Vec<C>> = t
            .iter()
            .map(|row| row.iter().map(|x| x.exact_numeric()).collect())
            .collect();
        let t_num_transpose: Vec<Vec<C>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| t_num[j][i]).collect())
            .collect();
        let q_num: Vec<Vec<C>> = self
            .q
            .iter()
            .map(|row| row.iter().map(|x| x.exact_numeric()).collect())
            .collect();
        let tq_num = cnum::mat_mul(&t_num_transpose, &q_num);
        let tqt_num = cnum::mat_mul(&tq_num, &t_num);
        let product_scale = (cnum::max_abs(&tq_num) * cnum::max_abs(&t_num)).max(1.0);
        for i in 0..self.n {
            for j in 0..self.n {
                if (tqt_num[i][j] - q_num[i][j]).norm() > 1e-10 * product_scale {
                    scalar_consistency = false;
                }
            }
        }
        // independent numeric exponential against the exact monodromy
        let mut numeric_t = cnum::identity(self.n);
        let mut term = cnum::identity(self.n);
        let n_num: Vec<Vec<C>> = self
            .nilpotent
            .iter()
            .map(|row| row.iter().map(|x| C::new(rat_to_f64(x), 0.0)).collect())
            .collect();
        for k in 1..=self.dim_y {
            term = cnum::mat_mul(&term, &n_num);
            let factor = -two_pi_i_pow(1) / C::new(k as f64, 0.0);
            for row in term.iter_mut() {
                for x in row.iter_mut() {
                    *x *= factor;
                }
            }
            for i in 0..self.n {
                for j in 0..self.n {
                    numeric_t[i][j] += term[i][j];
                }
            }
        }
        let scale = cnum::max_abs(&numeric_t).max(1.0);
        for i in 0..self.n {
            for j in 0..self.n {
                if (numeric_t[i][j] - t[i][j].exact_numeric()).norm() > 1e-12 * scale {
                    scalar_consistency = false;
                }
            }
        }

        // injecting the top-degree vector into the deepest filtration
        // step must break orthogonality, since it pairs with the unit
        let corrupted = |p: usize| -> Result<Vec<Vec<Rat>>> {
            let mut basis = self.filtration_basis(p)?;
            if p == self.dim_y {
                let mut v = vec![Rat::zero(); self.n];
                v[self.n - 1] = Rat::one();
                basis.push(v);
            }
            Ok(basis)
        };
        let corrupted_filtration_detected = !self.orthogonality_holds_for(&corrupted)?;

        Ok(StructureReport {
            filtration_dims,
            griffiths_transversality,
            orthogonality,
            pairing_symmetry,
            nilpotent_isometry,
            monodromy_isometry,
            scalar_consistency,
            corrupted_filtration_detected,
        })
    }

    /// `exp(2 pi y N)` as a real matrix: the twist of the filtration at
    /// the purely imaginary orbit parameter `i y`.
    pub fn orbit_twist(&self, y: f64) -> Vec<Vec<f64>> {
        let powers = self.nilpotent_powers();
        let mut out = vec![vec![0.0f64; self.n]; self.n];
        let mut factorial = 1.0f64;
        for (k, nk) in powers.iter().enumerate() {
            if k > 0 {
                factorial *= k as f64;
            }
            let coeff = (2.0 * std::f64::consts::PI * y).powi(k as i32) / factorial;
            for i in 0..self.n {
                for j in 0..self.n {
                    out[i][j] += coeff * rat_to_f64(&nk[i][j]);
                }
            }
        }
        out
    }

    /// Numeric value of the pairing on complex coordinate vectors.
    pub fn pair_numeric(&self, u: &[C], v: &[C]) -> C {
        let mut acc = C::zero();
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if !self.q[i][j].is_zero() {
                    acc += ui * self.q[i][j].exact_numeric() * vj;
                }
            }
        }
        acc
    }

    /// Hodge decomposition along the orbit and the Hermitian forms
    /// `i^(q-p) Q(u, kappa v)` on each piece; `lattice` rows span the
    /// real structure used for the conjugation `kappa`.
    pub fn positivity_sweep(
        &self,
        lattice: &[Vec<C>],
        ys: &[f64],
        tol: f64,
    ) -> Result<Vec<SweepReport>> {
        if lattice.len() != self.n {
            return Err(Error::SubspaceDimMismatch(format!(
                "real structure basis has {} vectors for dimension {}",
                lattice.len(),
                self.n
            )));
        }
        let g: Vec<Vec<C>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| lattice[j][i]).collect())
            .collect();
        let g_inv = cnum::invert(&g, tol).ok_or_else(|| {
            Error::SpanFailure("real structure basis is singular".into())
        })?;
        let kappa = |v: &[C]| -> Vec<C> {
            let coords = cnum::mat_vec(&g_inv, v);
            let conj: Vec<C> = coords.iter().map(|x| x.conj()).collect();
            cnum::mat_vec(&g, &conj)
        };

        let d = self.dim_y;
        let mut reports = Vec::with_capacity(ys.len());
        for &y in ys {
            let twist = self.orbit_twist(y);
            let twist_c: Vec<Vec<C>> = twist
                .iter()
                .map(|row| row.iter().map(|&x| C::new(x, 0.0)).collect())
                .collect();
            let twisted_basis = |p: usize| -> Result<Vec<Vec<C>>> {
                Ok(self
                    .filtration_basis(p)?
                    .iter()
                    .map(|v| {
                        let vc: Vec<C> =
                            v.iter().map(|x| C::new(rat_to_f64(x), 0.0)).collect();
                        cnum::mat_vec(&twist_c, &vc)
                    })
                    .collect())
            };
            let mut blocks = Vec::with_capacity(d + 1);
            let mut min_eigenvalue = f64::INFINITY;
            for p in 0..=d {
                let q_deg = d - p;
                let fp = twisted_basis(p)?;
                let fq: Vec<Vec<C>> =
                    twisted_basis(q_deg)?.iter().map(|v| kappa(v)).collect();
                let piece = cnum::intersect_spans(&fp, &fq, tol);
                if piece.len() != self.dims[q_deg] {
                    return Err(Error::SubspaceDimMismatch(format!(
                        "Hodge piece ({p},{q_deg}) at y = {y} has dimension {} instead of {}",
                        piece.len(),
                        self.dims[q_deg]
                    )));
                }
                let weight = C::new(0.0, 1.0).powi(q_deg as i32 - p as i32);
                let gram: Vec<Vec<C>> = piece
                    .iter()
                    .map(|u| {
                        piece
                            .iter()
                            .map(|v| weight * self.pair_numeric(u, &kappa(v)))
                            .collect()
                    })
                    .collect();
                let eig = cnum::hermitian_eigenvalues(&gram, 1e-6)?;
                let min_here = eig.first().copied().unwrap_or(f64::INFINITY);
                min_eigenvalue = min_eigenvalue.min(min_here);
                blocks.push(SweepBlock {
                    p,
                    q: q_deg,
                    dim: piece.len(),
                    min_eigenvalue: min_here,
                });
            }
            reports.push(SweepReport { y, blocks, min_eigenvalue });
        }
        Ok(reports)
    }
}

/// Real structure spanned by scale-graded unit vectors: vector `i` of
/// degree `k` carries `(2 pi i)^(k - d)`.  For curve and surface
/// fibers this is the real span of the lattice of bundle vectors.
pub fn graded_real_structure(degrees: &[usize], d: usize) -> Vec<Vec<C>> {
    let n = degrees.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        two_pi_i_pow(degrees[i] as i32 - d as i32)
                    } else {
                        C::zero()
                    }
                })
                .collect()
        })
        .collect()
}
