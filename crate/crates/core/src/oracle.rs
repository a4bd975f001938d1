//! Independent checks on the closed forms: explicit Laplacians, a cyclic
//! Jacobi eigensolver, exact characteristic polynomials over big integers,
//! and the per-`n` verification report.

#![allow(clippy::needless_range_loop)]

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphcore::{self, Graph};
use crate::spectra::{self, ExactSpectrum, SpectrumDoc, SpectrumMultiset};

pub const JACOBI_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;
pub const NUMERIC_MATCH_TOL: f64 = 1e-8;
pub const INTEGRALITY_TOL: f64 = 1e-6;
pub const DEFAULT_MAX_ORDER: usize = 256;

/// Square symmetric integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricIntMatrix {
    order: usize,
    entries: Vec<i64>,
}

impl SymmetricIntMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let order = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != order) {
            return Err(Error::Contract(format!("row {bad} has the wrong length")));
        }
        for i in 0..order {
            for j in i + 1..order {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self {
            order,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn trace(&self) -> i64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.order)
            .map(|i| self.row(i).iter().map(|&x| x as f64).collect())
            .collect()
    }
}

/// `L = D - A`.
pub fn laplacian_matrix(g: &Graph) -> SymmetricIntMatrix {
    let k = g.order();
    let mut entries = vec![0i64; k * k];
    for (i, j) in g.edges() {
        entries[i * k + j] = -1;
        entries[j * k + i] = -1;
        entries[i * k + i] += 1;
        entries[j * k + j] += 1;
    }
    SymmetricIntMatrix { order: k, entries }
}

/// All eigenvalues of a real symmetric matrix, ascending, by cyclic Jacobi
/// rotations.
///
/// Sweeps stop once the off-diagonal Frobenius norm drops below
/// `JACOBI_TOL * (1 + ||diag||)`.
pub fn symmetric_eigenvalues(m: &[Vec<f64>]) -> Result<Vec<f64>> {
    let k = m.len();
    if let Some(bad) = m.iter().position(|r| r.len() != k) {
        return Err(Error::Contract(format!("row {bad} has the wrong length")));
    }
    let max_abs = m.iter().flatten().fold(0.0f64, |acc, &x| acc.max(x.abs()));
    let sym_tol = JACOBI_TOL * max_abs.max(1.0);
    for i in 0..k {
        for j in i + 1..k {
            if (m[i][j] - m[j][i]).abs() > sym_tol {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }

    let mut a: Vec<f64> = m.iter().flatten().copied().collect();
    // Average the two triangles so later rotations see an exactly symmetric matrix.
    for i in 0..k {
        for j in i + 1..k {
            let avg = 0.5 * (a[i * k + j] + a[j * k + i]);
            a[i * k + j] = avg;
            a[j * k + i] = avg;
        }
    }

    let mut converged = false;
    for _ in 0..=MAX_SWEEPS {
        let mut off = 0.0;
        let mut diag = 0.0;
        for i in 0..k {
            diag += a[i * k + i] * a[i * k + i];
            for j in i + 1..k {
                off += 2.0 * a[i * k + j] * a[i * k + j];
            }
        }
        if off.sqrt() < JACOBI_TOL * (1.0 + diag.sqrt()) {
            converged = true;
            break;
        }
        for p in 0..k {
            for q in p + 1..k {
                rotate(&mut a, k, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }
    let mut eig: Vec<f64> = (0..k).map(|i| a[i * k + i]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut [f64], k: usize, p: usize, q: usize) {
    let apq = a[p * k + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * k + p];
    let aqq = a[q * k + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    a[p * k + p] = app - t * apq;
    a[q * k + q] = aqq + t * apq;
    a[p * k + q] = 0.0;
    a[q * k + p] = 0.0;
    for r in 0..k {
        if r == p || r == q {
            continue;
        }
        let arp = a[r * k + p];
        let arq = a[r * k + q];
        let new_p = c * arp - s * arq;
        let new_q = s * arp + c * arq;
        a[r * k + p] = new_p;
        a[p * k + r] = new_p;
        a[r * k + q] = new_q;
        a[q * k + r] = new_q;
    }
}

/// Integer polynomial, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPolynomial {
    coeffs: Vec<BigInt>,
}

impl ExactPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `Π (x - λ)^μ` over the spectrum entries.
    pub fn from_spectrum(s: &ExactSpectrum) -> Self {
        let mut coeffs = vec![BigInt::one()];
        for (value, mult) in s.entries() {
            let root = BigInt::from(value);
            for _ in 0..mult {
                // multiply by (x - root)
                let mut next = vec![BigInt::zero(); coeffs.len() + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * &root;
                }
                coeffs = next;
            }
        }
        Self::new(coeffs)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Quotient by `(x - root)` if the division is exact.
    pub fn divide_by_root(&self, root: &BigInt) -> Option<Self> {
        if self.degree() == 0 {
            return None;
        }
        let d = self.degree();
        let mut quotient = vec![BigInt::zero(); d];
        let mut carry = BigInt::zero();
        for i in (0..=d).rev() {
            let value = &self.coeffs[i] + &carry * root;
            if i == 0 {
                return value.is_zero().then(|| Self::new(quotient));
            }
            quotient[i - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    /// How many times `(x - root)` divides the polynomial.
    pub fn root_multiplicity(&self, root: &BigInt) -> usize {
        let mut count = 0;
        let mut p = self.clone();
        while let Some(q) = p.divide_by_root(root) {
            count += 1;
            p = q;
        }
        count
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && !(i == 0 && first) {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(xI - M)` by the Faddeev–LeVerrier
/// recurrence over big integers:
///
/// ```text
/// M_1 = I,                c_{k-1} = -tr(A)
/// M_j = A M_{j-1} + c_{k-j+1} I,  c_{k-j} = -tr(A M_j) / j
/// ```
///
/// Every division is exact. Each product `A M` is formed row by row as a
/// combination of rows of `M`; rows of `A` are split into their most common
/// entry (applied to the column sums of `M`) plus the remaining entries,
/// which keeps near-complete Laplacians cheap. `A M` is symmetric because
/// `M` is a polynomial in `A`, so only its upper triangle is computed.
pub fn char_poly_exact(m: &SymmetricIntMatrix, max_order: usize) -> Result<ExactPolynomial> {
    let k = m.order();
    if k > max_order {
        return Err(Error::OrderTooLarge {
            order: k,
            cap: max_order,
        });
    }
    let plans: Vec<(i64, Vec<(usize, i64)>)> = (0..k).map(|i| row_plan(m.row(i))).collect();
    let uses_base = plans.iter().any(|(base, _)| *base != 0);

    let mut coeffs = vec![BigInt::zero(); k + 1];
    coeffs[k] = BigInt::one();
    let mut current: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();

    for step in 1..=k {
        let column_sums: Vec<BigInt> = if uses_base {
            (0..k)
                .map(|j| current.iter().map(|row| &row[j]).sum())
                .collect()
        } else {
            Vec::new()
        };
        let mut product: Vec<Vec<BigInt>> = vec![Vec::new(); k];
        for i in 0..k {
            let (base, extras) = &plans[i];
            let mut acc: Vec<BigInt> = if *base == 0 {
                vec![BigInt::zero(); k - i]
            } else {
                column_sums[i..].iter().map(|s| s * *base).collect()
            };
            for &(j, coef) in extras {
                add_scaled(&mut acc, &current[j][i..], coef);
            }
            product[i] = acc;
        }
        let trace: BigInt = (0..k).map(|i| &product[i][0]).sum();
        let divisor = BigInt::from(step);
        if !(&trace % &divisor).is_zero() {
            return Err(Error::Contract(format!(
                "inexact Faddeev-LeVerrier division at step {step}"
            )));
        }
        let c = -(trace / divisor);
        if step < k {
            // Expand the upper triangle back to a full symmetric matrix.
            let mut next: Vec<Vec<BigInt>> = vec![Vec::with_capacity(k); k];
            for i in 0..k {
                for j in 0..k {
                    let v = if j >= i {
                        product[i][j - i].clone()
                    } else {
                        product[j][i - j].clone()
                    };
                    next[i].push(v);
                }
                next[i][i] += &c;
            }
            current = next;
        }
        coeffs[k - step] = c;
    }
    Ok(ExactPolynomial::new(coeffs))
}

/// Most common entry of a row, and the `(column, entry - base)` corrections.
fn row_plan(row: &[i64]) -> (i64, Vec<(usize, i64)>) {
    let mut counts: HashMap<i64, usize> = HashMap::new();
    for &x in row {
        *counts.entry(x).or_insert(0) += 1;
    }
    let base = counts
        .into_iter()
        .max_by_key(|&(value, count)| (count, std::cmp::Reverse(value.abs()), value))
        .map_or(0, |(value, _)| value);
    let extras = row
        .iter()
        .enumerate()
        .filter(|&(_, &x)| x != base)
        .map(|(j, &x)| (j, x - base))
        .collect();
    (base, extras)
}

fn add_scaled(acc: &mut [BigInt], row: &[BigInt], coef: i64) {
    match coef {
        0 => {}
        1 => acc.iter_mut().zip(row).for_each(|(a, r)| *a += r),
        -1 => acc.iter_mut().zip(row).for_each(|(a, r)| *a -= r),
        _ => acc.iter_mut().zip(row).for_each(|(a, r)| *a += r * coef),
    }
}

/// Whether `p` equals `Π (x - λ)^μ` for the given exact spectrum.
pub fn poly_matches_spectrum(p: &ExactPolynomial, s: &SpectrumMultiset) -> Result<bool> {
    let exact = s
        .as_exact()
        .ok_or_else(|| Error::Contract("polynomial comparison needs an exact spectrum".into()))?;
    Ok(*p == ExactPolynomial::from_spectrum(exact))
}

/// Rounds each eigenvalue to the nearest integer (halves away from zero) and
/// reports whether all of them were within `tol`.
pub fn integrality_check(eigs: &[f64], tol: f64) -> Result<(bool, Vec<i64>)> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Contract(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let rounded: Vec<i64> = eigs.iter().map(|v| v.round() as i64).collect();
    let ok = eigs
        .iter()
        .zip(&rounded)
        .all(|(v, &r)| (v - r as f64).abs() <= tol);
    Ok((ok, rounded))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub integrality_tol: f64,
    pub numeric_tol: f64,
    pub max_order: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            integrality_tol: INTEGRALITY_TOL,
            numeric_tol: NUMERIC_MATCH_TOL,
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "DEGENERATE-EMPTY")]
    DegenerateEmpty,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::DegenerateEmpty => "DEGENERATE-EMPTY",
        })
    }
}

/// `charpoly_match` is `None` when the Laplacian order exceeds the cap and
/// the exact polynomial was not computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub construction_equal: bool,
    pub trace_edges: bool,
    pub charpoly_match: Option<bool>,
    pub numeric_match: bool,
    pub integral: bool,
}

impl Checks {
    fn all_pass(&self) -> bool {
        self.construction_equal
            && self.trace_edges
            && self.charpoly_match.unwrap_or(true)
            && self.numeric_match
            && self.integral
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub n: u64,
    pub status: Status,
    pub checks: Checks,
    pub spectrum: ExactSpectrum,
    pub edge_count: usize,
    /// Jacobi eigenvalues of the explicit Laplacian, ascending.
    pub numeric: Vec<f64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            n: u64,
            status: Status,
            checks: &'a Checks,
            spectrum: SpectrumDoc,
        }
        let doc = Doc {
            n: self.n,
            status: self.status,
            checks: &self.checks,
            spectrum: SpectrumMultiset::Exact(self.spectrum.clone()).to_doc(Some(self.n)),
        };
        serde_json::to_string(&doc).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .spectrum
            .entries()
            .map(|(v, m)| format!("{v}:{m}"))
            .collect();
        let flag = |b: bool| if b { "ok" } else { "FAILED" };
        let charpoly = match self.checks.charpoly_match {
            Some(b) => flag(b),
            None => "skipped",
        };
        write!(
            f,
            "{} {} order={} edges={} spectrum={{{}}} construction={} trace={} charpoly={} numeric={} integral={}",
            self.n,
            self.status,
            self.spectrum.order(),
            self.edge_count,
            entries.join(", "),
            flag(self.checks.construction_equal),
            flag(self.checks.trace_edges),
            charpoly,
            flag(self.checks.numeric_match),
            flag(self.checks.integral),
        )
    }
}

/// Checks the closed-form spectrum of `WΓ(Z_n)` against the explicit graph:
/// both constructions agree, the trace is twice the edge count, the Jacobi
/// eigenvalues match and are integral, and the exact characteristic
/// polynomial factors as the closed form says.
pub fn verify_spectrum(n: u64, opts: &VerifyOptions) -> Result<VerificationReport> {
    let closed = spectra::wzd_spectrum_closed_form(n)?;
    let brute = graphcore::build_bruteforce_wzd(n)?;
    if brute.order() == 0 && closed.order() == 0 {
        return Ok(VerificationReport {
            n,
            status: Status::DegenerateEmpty,
            checks: Checks {
                construction_equal: true,
                trace_edges: true,
                charpoly_match: Some(true),
                numeric_match: true,
                integral: true,
            },
            spectrum: closed,
            edge_count: 0,
            numeric: Vec::new(),
        });
    }
    let structural = graphcore::build_structural_wzd(n)?;
    let laplacian = laplacian_matrix(&brute);
    let numeric = symmetric_eigenvalues(&laplacian.to_f64_rows())?;

    let expected = closed.expand();
    let scale = numeric.len().max(1) as f64;
    let numeric_match = expected.len() == numeric.len()
        && expected
            .iter()
            .zip(&numeric)
            .all(|(&e, &x)| (e as f64 - x).abs() < opts.numeric_tol * scale);
    let (integral, _) = integrality_check(&numeric, opts.integrality_tol)?;
    let charpoly_match = if laplacian.order() <= opts.max_order {
        let poly = char_poly_exact(&laplacian, opts.max_order)?;
        Some(poly_matches_spectrum(
            &poly,
            &SpectrumMultiset::Exact(closed.clone()),
        )?)
    } else {
        None
    };
    let checks = Checks {
        construction_equal: graphcore::graphs_equal(&brute, &structural),
        trace_edges: closed.trace() == 2 * brute.edge_count() as u128,
        charpoly_match,
        numeric_match,
        integral,
    };
    Ok(VerificationReport {
        n,
        status: if checks.all_pass() {
            Status::Pass
        } else {
            Status::Fail
        },
        checks,
        spectrum: closed,
        edge_count: brute.edge_count(),
        numeric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::new(None, vec![0, 1, 2], [(0, 1), (1, 2)]).unwrap()
    }

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < tol, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn laplacian_examples() {
        let k2 = laplacian_matrix(&Graph::complete(2));
        assert_eq!(
            k2,
            SymmetricIntMatrix::from_rows(vec![vec![1, -1], vec![-1, 1]]).unwrap()
        );
        let p3 = laplacian_matrix(&path3());
        assert_eq!(
            p3,
            SymmetricIntMatrix::from_rows(vec![vec![1, -1, 0], vec![-1, 2, -1], vec![0, -1, 1]])
                .unwrap()
        );
        let e3 = laplacian_matrix(&Graph::empty(3));
        assert!((0..3).all(|i| e3.row(i).iter().all(|&x| x == 0)));
        assert!(SymmetricIntMatrix::from_rows(vec![vec![0, 1], vec![2, 0]]).is_err());
    }

    #[test]
    fn jacobi_examples() {
        assert_close(
            &symmetric_eigenvalues(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap(),
            &[0.0, 2.0],
            1e-12,
        );
        let diag = vec![
            vec![3.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 2.0],
        ];
        assert_eq!(symmetric_eigenvalues(&diag).unwrap(), vec![1.0, 2.0, 3.0]);
        assert_close(
            &symmetric_eigenvalues(&laplacian_matrix(&path3()).to_f64_rows()).unwrap(),
            &[0.0, 1.0, 3.0],
            1e-12,
        );
        assert!(symmetric_eigenvalues(&[]).unwrap().is_empty());
    }

    #[test]
    fn jacobi_rejects_bad_input() {
        assert!(matches!(
            symmetric_eigenvalues(&[vec![1.0, 2.0], vec![0.0, 1.0]]),
            Err(Error::NotSymmetric { .. })
        ));
        assert!(matches!(
            symmetric_eigenvalues(&[vec![1.0, 2.0]]),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn jacobi_preserves_trace_on_random_symmetric_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for k in 1..=25 {
            let mut m = vec![vec![0.0; k]; k];
            for i in 0..k {
                for j in i..k {
                    let x: f64 = rng.gen_range(-10.0..10.0);
                    m[i][j] = x;
                    m[j][i] = x;
                }
            }
            let trace: f64 = (0..k).map(|i| m[i][i]).sum();
            let frob: f64 = m.iter().flatten().map(|x| x * x).sum();
            let eig = symmetric_eigenvalues(&m).unwrap();
            let sum: f64 = eig.iter().sum();
            let sq: f64 = eig.iter().map(|x| x * x).sum();
            assert!(
                (sum - trace).abs() <= 1e-9 * trace.abs().max(1.0),
                "k = {k}"
            );
            assert!((sq - frob).abs() <= 1e-9 * frob.max(1.0), "k = {k}");
            assert!(eig.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn char_poly_examples() {
        let k2 = laplacian_matrix(&Graph::complete(2));
        assert_eq!(
            char_poly_exact(&k2, DEFAULT_MAX_ORDER).unwrap(),
            ExactPolynomial::from_i64(&[0, -2, 1])
        );
        let k3 = laplacian_matrix(&Graph::complete(3));
        assert_eq!(
            char_poly_exact(&k3, DEFAULT_MAX_ORDER).unwrap(),
            ExactPolynomial::from_i64(&[0, 9, -6, 1])
        );
        let zero = SymmetricIntMatrix::from_rows(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(
            char_poly_exact(&zero, DEFAULT_MAX_ORDER).unwrap(),
            ExactPolynomial::from_i64(&[0, 0, 1])
        );
        assert!(matches!(
            char_poly_exact(&k3, 2),
            Err(Error::OrderTooLarge { order: 3, cap: 2 })
        ));
    }

    /// Cofactor expansion of det(xI - M) with polynomial entries; exponential,
    /// so only for tiny matrices.
    fn char_poly_by_cofactors(m: &[Vec<i64>]) -> Vec<i64> {
        fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
            let mut out = vec![0; a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        }
        fn det(entries: &[Vec<Vec<i64>>]) -> Vec<i64> {
            let k = entries.len();
            if k == 1 {
                return entries[0][0].clone();
            }
            let mut total = vec![0i64; k + 1];
            for col in 0..k {
                let minor: Vec<Vec<Vec<i64>>> = entries[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != col)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = mul(&entries[0][col], &det(&minor));
                let sign = if col % 2 == 0 { 1 } else { -1 };
                for (i, t) in term.iter().enumerate() {
                    total[i] += sign * t;
                }
            }
            total
        }
        let k = m.len();
        let entries: Vec<Vec<Vec<i64>>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if i == j {
                            vec![-m[i][j], 1]
                        } else {
                            vec![-m[i][j]]
                        }
                    })
                    .collect()
            })
            .collect();
        det(&entries)
    }

    #[test]
    fn char_poly_matches_cofactor_expansion() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for k in 1..=6 {
            for _ in 0..10 {
                let mut rows = vec![vec![0i64; k]; k];
                for i in 0..k {
                    for j in i..k {
                        let x = rng.gen_range(-3..=3);
                        rows[i][j] = x;
                        rows[j][i] = x;
                    }
                }
                let expected = ExactPolynomial::from_i64(&char_poly_by_cofactors(&rows));
                let m = SymmetricIntMatrix::from_rows(rows).unwrap();
                assert_eq!(char_poly_exact(&m, DEFAULT_MAX_ORDER).unwrap(), expected);
            }
        }
    }

    #[test]
    fn polynomial_helpers() {
        let p = ExactPolynomial::from_i64(&[0, 9, -6, 1]);
        assert_eq!(p.to_string(), "x^3 - 6x^2 + 9x");
        assert_eq!(
            ExactPolynomial::from_i64(&[0, -2, 1]).to_string(),
            "x^2 - 2x"
        );
        assert_eq!(ExactPolynomial::from_i64(&[0]).to_string(), "0");
        assert_eq!(ExactPolynomial::from_i64(&[-4]).to_string(), "-4");
        assert!(p.is_monic());
        assert_eq!(p.degree(), 3);
        assert_eq!(p.root_multiplicity(&BigInt::from(3)), 2);
        assert_eq!(p.root_multiplicity(&BigInt::from(0)), 1);
        assert_eq!(p.root_multiplicity(&BigInt::from(2)), 0);
        assert_eq!(p.evaluate(&BigInt::from(2)), BigInt::from(2));
    }

    #[test]
    fn poly_spectrum_examples() {
        let p = ExactPolynomial::from_i64(&[0, -2, 1]);
        let s = |e: &[(u64, usize)]| {
            SpectrumMultiset::Exact(ExactSpectrum::from_entries(e.iter().copied()))
        };
        assert_eq!(poly_matches_spectrum(&p, &s(&[(0, 1), (2, 1)])), Ok(true));
        assert_eq!(poly_matches_spectrum(&p, &s(&[(0, 2)])), Ok(false));
        let float =
            SpectrumMultiset::Float(crate::spectra::FloatSpectrum::from_values(vec![0.0, 2.0]));
        assert!(poly_matches_spectrum(&p, &float).is_err());

        let l18 = laplacian_matrix(&graphcore::build_bruteforce_wzd(18).unwrap());
        let poly = char_poly_exact(&l18, DEFAULT_MAX_ORDER).unwrap();
        let closed = spectra::wzd_spectrum_closed_form(18).unwrap();
        assert_eq!(
            poly_matches_spectrum(&poly, &SpectrumMultiset::Exact(closed.clone())),
            Ok(true)
        );
        for (value, mult) in closed.entries() {
            let root = BigInt::from(value);
            assert!(poly.evaluate(&root).is_zero());
            assert_eq!(poly.root_multiplicity(&root), mult);
        }
    }

    #[test]
    fn integrality_examples() {
        assert_eq!(
            integrality_check(&[0.0, 4.9999999, 11.0000001], 1e-6),
            Ok((true, vec![0, 5, 11]))
        );
        let (ok, rounded) = integrality_check(&[0.5], 1e-6).unwrap();
        assert!(!ok);
        assert_eq!(rounded, vec![1]);
        assert_eq!(integrality_check(&[], 1e-6), Ok((true, vec![])));
        assert!(integrality_check(&[1.0], 0.0).is_err());
    }

    #[test]
    fn verify_examples() {
        let opts = VerifyOptions::default();
        let r18 = verify_spectrum(18, &opts).unwrap();
        assert_eq!(r18.status, Status::Pass);
        assert_eq!(
            r18.spectrum,
            ExactSpectrum::from_entries([(0, 1), (5, 5), (11, 5)])
        );
        assert_eq!(r18.edge_count, 40);

        let r7 = verify_spectrum(7, &opts).unwrap();
        assert_eq!(r7.status, Status::DegenerateEmpty);
        assert!(r7.passed());

        let r36 = verify_spectrum(36, &opts).unwrap();
        assert_eq!(r36.status, Status::Pass);
        assert_eq!(
            r36.spectrum,
            ExactSpectrum::from_entries([(0, 1), (23, 22)])
        );

        let capped = verify_spectrum(
            36,
            &VerifyOptions {
                max_order: 10,
                ..opts
            },
        )
        .unwrap();
        assert_eq!(capped.checks.charpoly_match, None);
        assert_eq!(capped.status, Status::Pass);

        assert!(verify_spectrum(1, &opts).is_err());
    }

    #[test]
    fn report_json_schema() {
        let r = verify_spectrum(6, &VerifyOptions::default()).unwrap();
        assert_eq!(
            r.to_json(),
            r#"{"n":6,"status":"PASS","checks":{"construction_equal":true,"trace_edges":true,"charpoly_match":true,"numeric_match":true,"integral":true},"spectrum":{"n":6,"variant":"exact","order":3,"entries":[{"eigenvalue":0,"multiplicity":1},{"eigenvalue":1,"multiplicity":1},{"eigenvalue":3,"multiplicity":1}]}}"#
        );
    }
}
