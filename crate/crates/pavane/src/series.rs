//! Exact truncated power series over the rationals, the closed-form
//! generating function for the k = 4 class, the binomial transform, and an
//! exact algebraic-relation guesser. No floating point anywhere here.

use num::{BigInt, BigRational, BigUint, One, Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::nullspace;

pub type Rat = BigRational;

fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Exact rational coefficients c_0..c_N of a formal power series,
/// truncated inclusively at order N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rat>,
}

impl TruncatedSeries {
    /// `coeffs` must be nonempty (order 0 means a single constant term).
    pub fn new(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least c_0");
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    /// Series from integer polynomial coefficients, truncated or zero-padded
    /// to `order`.
    pub fn from_ints(terms: &[BigInt], order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|i| {
                terms
                    .get(i)
                    .map(|t| Rat::from_integer(t.clone()))
                    .unwrap_or_else(Rat::zero)
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_order(&self, other: &TruncatedSeries) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::InvalidParameter(format!(
                "truncation orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_order(other)?;
        let n = self.order();
        let mut coeffs = vec![Rat::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if !other.coeffs[j].is_zero() {
                    coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
                }
            }
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Power-series long division; the divisor needs a nonzero constant
    /// term.
    pub fn div(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_order(other)?;
        if other.coeffs[0].is_zero() {
            return Err(Error::InvalidParameter(
                "division by a series with zero constant term".into(),
            ));
        }
        let n = self.order();
        let mut coeffs = vec![Rat::zero(); n + 1];
        for m in 0..=n {
            let mut acc = self.coeffs[m].clone();
            for i in 1..=m {
                if !other.coeffs[i].is_zero() {
                    acc -= &other.coeffs[i] * &coeffs[m - i];
                }
            }
            coeffs[m] = acc / &other.coeffs[0];
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Composition `self(inner(z))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::InvalidParameter(
                "composition requires an inner series with zero constant term".into(),
            ));
        }
        let n = self.order();
        // Horner accumulation from the top coefficient down.
        let mut acc = TruncatedSeries::zero(n);
        acc.coeffs[0] = self.coeffs[n].clone();
        for i in (0..n).rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }

    /// Square root with constant term 1, by the coefficient recurrence
    /// s_m = (a_m - sum_{i=1}^{m-1} s_i s_{m-i}) / 2.
    pub fn sqrt(&self) -> Result<TruncatedSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidParameter(
                "sqrt requires constant term 1".into(),
            ));
        }
        let n = self.order();
        let two = rat(2);
        let mut s = vec![Rat::zero(); n + 1];
        s[0] = Rat::one();
        for m in 1..=n {
            let mut acc = self.coeffs[m].clone();
            for i in 1..m {
                acc -= &s[i] * &s[m - i];
            }
            s[m] = acc / &two;
        }
        Ok(TruncatedSeries { coeffs: s })
    }
}

/// Coefficients of (1 + z - sqrt(1 - 6z + 5z^2)) / (2(2z - z^2)) to the
/// given order, computed exactly. Numerator and denominator share a factor
/// z which is cancelled symbolically before the series division.
pub fn gf_a44(order: usize) -> TruncatedSeries {
    let high = order + 1;
    let mut delta = TruncatedSeries::zero(high);
    delta.coeffs[0] = rat(1);
    delta.coeffs[1] = rat(-6);
    if high >= 2 {
        delta.coeffs[2] = rat(5);
    }
    let root = delta.sqrt().expect("1 - 6z + 5z^2 has constant term 1");
    let mut numerator = TruncatedSeries::zero(high);
    numerator.coeffs[0] = rat(1);
    numerator.coeffs[1] = rat(1);
    let numerator = numerator.sub(&root).expect("same order");
    assert!(
        numerator.coeffs[0].is_zero(),
        "1 + z - sqrt(1 - 6z + 5z^2) must vanish at z = 0"
    );
    let shifted = TruncatedSeries::new(numerator.coeffs[1..].to_vec());
    let mut denominator = TruncatedSeries::zero(order);
    denominator.coeffs[0] = rat(4);
    if order >= 1 {
        denominator.coeffs[1] = rat(-2);
    }
    shifted.div(&denominator).expect("denominator has constant term 4")
}

/// `gf_a44` coefficients as nonnegative integers; panics if any coefficient
/// fails to be one, which would break the class-count interpretation.
pub fn gf_a44_counts(order: usize) -> Vec<BigUint> {
    gf_a44(order)
        .coeffs()
        .iter()
        .map(|c| {
            assert!(c.is_integer() && !c.is_negative(), "non-count coefficient {c}");
            c.to_integer().to_biguint().unwrap()
        })
        .collect()
}

/// Binomial transform b_n = sum_k C(n, k) a_k.
pub fn binomial_transform(a: &[Rat]) -> Vec<Rat> {
    (0..a.len())
        .map(|n| {
            let mut acc = Rat::zero();
            for (k, term) in a.iter().enumerate().take(n + 1) {
                let binom = num::integer::binomial(BigInt::from(n), BigInt::from(k));
                acc += Rat::from_integer(binom) * term;
            }
            acc
        })
        .collect()
}

/// Integer-sequence binomial transform.
pub fn binomial_transform_ints(a: &[BigInt]) -> Vec<BigInt> {
    (0..a.len())
        .map(|n| {
            let mut acc = BigInt::zero();
            for (k, term) in a.iter().enumerate().take(n + 1) {
                acc += num::integer::binomial(BigInt::from(n), BigInt::from(k)) * term;
            }
            acc
        })
        .collect()
}

/// Companion identity for the transform: B(z) = A(z/(1-z)) / (1-z), checked
/// to the common truncation order.
pub fn binomial_transform_gf_identity_holds(a: &[Rat]) -> bool {
    let order = a.len() - 1;
    let a_series = TruncatedSeries::new(a.to_vec());
    let b_series = TruncatedSeries::new(binomial_transform(a));
    // z/(1-z) = z + z^2 + ... ; 1/(1-z) = 1 + z + ...
    let mut inner = TruncatedSeries::zero(order);
    for i in 1..=order {
        inner.coeffs[i] = Rat::one();
    }
    let mut geom = TruncatedSeries::zero(order);
    for i in 0..=order {
        geom.coeffs[i] = Rat::one();
    }
    let rhs = a_series
        .compose(&inner)
        .and_then(|s| s.mul(&geom))
        .expect("orders match");
    rhs == b_series
}

/// A bivariate polynomial P(z, F) = sum_i P_i(z) F^i claimed to annihilate
/// a series. `polys[i]` holds the z-coefficients of P_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorCandidate {
    pub polys: Vec<Vec<BigInt>>,
}

impl AnnihilatorCandidate {
    pub fn degree_in_f(&self) -> usize {
        self.polys
            .iter()
            .rposition(|p| p.iter().any(|c| !c.is_zero()))
            .unwrap_or(0)
    }

    pub fn degree_in_z(&self) -> usize {
        self.polys
            .iter()
            .filter_map(|p| p.iter().rposition(|c| !c.is_zero()))
            .max()
            .unwrap_or(0)
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.polys
            .iter()
            .flat_map(|p| p.iter())
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Render as a readable polynomial in z and F.
    pub fn display(&self) -> String {
        let mut parts = Vec::new();
        for (i, poly) in self.polys.iter().enumerate() {
            for (j, c) in poly.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut term = String::new();
                if c.is_one() && (i > 0 || j > 0) {
                    // coefficient 1 elided
                } else if (-c.clone()).is_one() && (i > 0 || j > 0) {
                    term.push('-');
                } else {
                    term.push_str(&c.to_string());
                    if i > 0 || j > 0 {
                        term.push('*');
                    }
                }
                if j == 1 {
                    term.push('z');
                } else if j > 1 {
                    term.push_str(&format!("z^{j}"));
                }
                if j > 0 && i > 0 {
                    term.push('*');
                }
                if i == 1 {
                    term.push('F');
                } else if i > 1 {
                    term.push_str(&format!("F^{i}"));
                }
                parts.push(term);
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }

    /// Serialization: big integers cross the boundary as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "d": self.degree_in_f(),
            "polys": self
                .polys
                .iter()
                .map(|p| p.iter().map(|c| c.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Integer coefficient vectors of F^0..F^d, truncated to `len` terms.
fn powers(terms: &[BigInt], d: usize, len: usize) -> Vec<Vec<BigInt>> {
    let mut pows = Vec::with_capacity(d + 1);
    let mut unit = vec![BigInt::zero(); len];
    unit[0] = BigInt::one();
    pows.push(unit);
    for _ in 1..=d {
        let prev = pows.last().unwrap();
        let mut next = vec![BigInt::zero(); len];
        for i in 0..len {
            if prev[i].is_zero() {
                continue;
            }
            for j in 0..len - i {
                if !terms[j].is_zero() {
                    next[i + j] += &prev[i] * &terms[j];
                }
            }
        }
        pows.push(next);
    }
    pows
}

/// Searches for an annihilating polynomial with degree at most `max_deg_f`
/// in F and `max_deg_z` in z, trying degree pairs in lexicographic order
/// (degree in F first) and requiring at least `margin` surplus equations
/// beyond unknowns. Returns the content-normalized minimal candidate, or
/// `None` when every feasible system has a trivial nullspace — a report,
/// never a proof of non-algebraicity.
pub fn hermite_pade_guess(
    terms: &[BigInt],
    max_deg_f: usize,
    max_deg_z: usize,
    margin: usize,
) -> Result<Option<AnnihilatorCandidate>> {
    if max_deg_f < 1 {
        return Err(Error::InvalidParameter("degree in F must be at least 1".into()));
    }
    let len = terms.len();
    let smallest = 2 + margin; // d = 1, D = 0 needs two unknowns
    if len < smallest {
        return Err(Error::InsufficientTerms {
            needed: smallest,
            got: len,
        });
    }
    let pows = powers(terms, max_deg_f, len);
    for d in 1..=max_deg_f {
        for dz in 0..=max_deg_z {
            let unknowns = (d + 1) * (dz + 1);
            if unknowns + margin > len {
                break;
            }
            // Equation per power of z: sum_{i,j} p_{i,j} [z^{m-j}] F^i = 0.
            let mat: Vec<Vec<BigInt>> = (0..len)
                .map(|m| {
                    let mut row = Vec::with_capacity(unknowns);
                    for pow in pows.iter().take(d + 1) {
                        for j in 0..=dz {
                            row.push(if m >= j { pow[m - j].clone() } else { BigInt::zero() });
                        }
                    }
                    row
                })
                .collect();
            let basis = nullspace(mat, unknowns);
            if basis.is_empty() {
                continue;
            }
            let best = basis
                .into_iter()
                .map(|v| vector_to_candidate(&v, d, dz))
                .min_by_key(|c| (c.degree_in_f(), c.degree_in_z(), c.max_abs_coeff()))
                .expect("nonempty basis");
            debug_assert!(verify_annihilator(terms, &best));
            return Ok(Some(best));
        }
    }
    Ok(None)
}

fn vector_to_candidate(v: &[BigInt], d: usize, dz: usize) -> AnnihilatorCandidate {
    let polys = (0..=d)
        .map(|i| v[i * (dz + 1)..(i + 1) * (dz + 1)].to_vec())
        .collect();
    AnnihilatorCandidate { polys }
}

/// True iff sum_i P_i(z) F(z)^i vanishes up to the truncation order of the
/// given terms.
pub fn verify_annihilator(terms: &[BigInt], cand: &AnnihilatorCandidate) -> bool {
    if terms.is_empty() {
        return false;
    }
    let order = terms.len() - 1;
    let f = TruncatedSeries::from_ints(terms, order);
    let mut acc = TruncatedSeries::zero(order);
    for poly in cand.polys.iter().rev() {
        acc = acc.mul(&f).expect("orders match");
        let p = TruncatedSeries::from_ints(poly, order);
        acc = acc.add(&p).expect("orders match");
    }
    acc.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn series(v: &[i64]) -> TruncatedSeries {
        TruncatedSeries::new(v.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn ring_op_examples() {
        let geom = series(&[1, 1, 1, 1]);
        let one_minus_z = series(&[1, -1, 0, 0]);
        assert_eq!(geom.mul(&one_minus_z).unwrap(), series(&[1, 0, 0, 0]));

        let a = series(&[3, 1, 4, 1]);
        assert_eq!(a.div(&a).unwrap(), series(&[1, 0, 0, 0]));

        // Truncation drops z^2.
        assert_eq!(series(&[1, 1]).mul(&series(&[1, 1])).unwrap(), series(&[1, 2]));

        assert!(series(&[0, 1]).div(&series(&[0, 1])).is_err());
        assert!(series(&[1, 1]).add(&series(&[1, 1, 1])).is_err());
    }

    #[test]
    fn sqrt_examples() {
        let delta = series(&[1, -6, 5, 0]);
        assert_eq!(delta.sqrt().unwrap(), series(&[1, -3, -2, -6]));
        let one = series(&[1, 0, 0, 0, 0]);
        assert_eq!(one.sqrt().unwrap(), one);
        assert!(series(&[2, 0]).sqrt().is_err());
    }

    #[test]
    fn compose_examples() {
        // identity outer: z ∘ (z/(1-z)) = z + z^2 + z^3 + ...
        let outer = series(&[0, 1, 0, 0, 0]);
        let inner = series(&[0, 1, 1, 1, 1]);
        assert_eq!(outer.compose(&inner).unwrap(), inner);
        assert!(outer.compose(&series(&[1, 1, 0, 0, 0])).is_err());
    }

    #[test]
    fn gf_a44_values() {
        let counts = gf_a44_counts(6);
        let expected: Vec<BigUint> = [1u32, 1, 2, 6, 21, 79, 311]
            .iter()
            .map(|&v| BigUint::from(v))
            .collect();
        assert_eq!(counts, expected);
    }

    /// Independent oracle: the coefficient recurrence from the minimal
    /// polynomial (2z - z^2)F^2 - (1+z)F + 1 = 0, namely
    /// c_n = 2*conv(n-1) - conv(n-2) - c_{n-1} with conv(m) = sum c_i c_{m-i}.
    fn gf_a44_recurrence(order: usize) -> Vec<BigInt> {
        let mut c = vec![BigInt::from(1)];
        let conv = |c: &[BigInt], m: i64| -> BigInt {
            if m < 0 {
                return BigInt::zero();
            }
            (0..=m as usize).map(|i| &c[i] * &c[m as usize - i]).sum()
        };
        for n in 1..=order {
            let v = BigInt::from(2) * conv(&c, n as i64 - 1) - conv(&c, n as i64 - 2)
                - c[n - 1].clone();
            c.push(v);
        }
        c
    }

    #[test]
    fn gf_a44_matches_recurrence_to_order_30() {
        let closed: Vec<BigInt> = gf_a44(30)
            .coeffs()
            .iter()
            .map(|c| c.to_integer())
            .collect();
        assert_eq!(closed, gf_a44_recurrence(30));
    }

    #[test]
    fn binomial_transform_examples() {
        let ones = vec![Rat::one(); 8];
        let b = binomial_transform(&ones);
        for (n, v) in b.iter().enumerate() {
            assert_eq!(v, &rat(1 << n));
        }
        let mut delta = vec![Rat::zero(); 6];
        delta[0] = Rat::one();
        assert_eq!(binomial_transform(&delta), vec![Rat::one(); 6]);
    }

    #[test]
    fn binomial_gf_identity_small() {
        let a: Vec<Rat> = [1, 1, 2, 6, 23, 103, 513, 2761]
            .iter()
            .map(|&v| rat(v))
            .collect();
        assert!(binomial_transform_gf_identity_holds(&a));
    }

    #[test]
    fn guess_catalan() {
        let terms = ints(&[1, 1, 2, 5, 14, 42, 132, 429]);
        let cand = hermite_pade_guess(&terms, 2, 1, 2).unwrap().unwrap();
        // z F^2 - F + 1, sign-normalized with P_0 = 1.
        assert_eq!(
            cand.polys,
            vec![ints(&[1, 0]), ints(&[-1, 0]), ints(&[0, 1])]
        );
        assert!(verify_annihilator(&terms, &cand));
    }

    #[test]
    fn guess_geometric() {
        let terms = ints(&[1, 2, 4, 8, 16]);
        let cand = hermite_pade_guess(&terms, 1, 1, 1).unwrap().unwrap();
        assert_eq!(cand.polys, vec![ints(&[1, 0]), ints(&[-1, 2])]);
        assert!(verify_annihilator(&terms, &cand));
    }

    #[test]
    fn guess_reports_insufficient_terms() {
        let terms = ints(&[1, 1, 2]);
        match hermite_pade_guess(&terms, 2, 2, 5) {
            Err(Error::InsufficientTerms { .. }) => {}
            other => panic!("expected InsufficientTerms, got {other:?}"),
        }
    }

    #[test]
    fn verify_rejects_non_annihilators() {
        let terms = ints(&[1, 1, 2, 5, 14]);
        // F - 1 fails at z^1.
        let cand = AnnihilatorCandidate {
            polys: vec![ints(&[-1]), ints(&[1])],
        };
        assert!(!verify_annihilator(&terms, &cand));
    }

    #[test]
    fn candidate_display_reads_naturally() {
        let cand = AnnihilatorCandidate {
            polys: vec![ints(&[1]), ints(&[-1, -1]), ints(&[0, 2, -1])],
        };
        assert_eq!(cand.display(), "1 - F - z*F + 2*z*F^2 - z^2*F^2");
    }

    proptest::proptest! {
        #[test]
        fn div_mul_round_trip(a in coeff_vec(), b in coeff_vec()) {
            proptest::prop_assume!(!b[0].is_zero());
            let a = TruncatedSeries::new(a);
            let b = TruncatedSeries::new(b);
            let q = a.div(&b).unwrap();
            proptest::prop_assert_eq!(q.mul(&b).unwrap(), a);
        }

        #[test]
        fn sqrt_squares_back(a in coeff_vec()) {
            let mut a = a;
            a[0] = Rat::one();
            let a = TruncatedSeries::new(a);
            let s = a.sqrt().unwrap();
            proptest::prop_assert_eq!(s.mul(&s).unwrap(), a);
        }
    }

    fn coeff_vec() -> impl proptest::strategy::Strategy<Value = Vec<Rat>> {
        use proptest::collection::vec;
        use proptest::prelude::*;
        vec((-9i64..=9, 1i64..=9), 8).prop_map(|pairs| {
            pairs
                .into_iter()
                .map(|(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
                .collect()
        })
    }
}
