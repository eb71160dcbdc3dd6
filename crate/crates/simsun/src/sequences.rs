//! Integer sequence oracles, computed exactly by integer convolution from
//! their defining recurrences. No floating-point radical evaluation anywhere.
//!
//! Indexing follows the generating functions:
//! Catalan 1, 1, 2, 5, 14, …; Motzkin 1, 1, 2, 4, 9, …; secondary structure
//! 1, 1, 2, 4, 8, 17, … (gf `(1−z−z²−√(1−2z−z²−2z³+z⁴))/(2z³)`, A004148
//! shifted by one); Fibonacci 0, 1, 1, 2, … (gf `z/(1−z−z²)`); Euler
//! (zigzag, `sec z + tan z`) 1, 1, 1, 2, 5, 16, 61, … (A000111).

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceId {
    Catalan,
    Motzkin,
    SecondaryStructure,
    Fibonacci,
    Euler,
}

impl SequenceId {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "catalan" | "c" => Ok(SequenceId::Catalan),
            "motzkin" | "m" => Ok(SequenceId::Motzkin),
            "secondary" | "s" => Ok(SequenceId::SecondaryStructure),
            "fibonacci" | "fib" | "f" => Ok(SequenceId::Fibonacci),
            "euler" | "e" => Ok(SequenceId::Euler),
            _ => Err(Error::ParseError(format!("unknown sequence id `{s}`"))),
        }
    }
}

/// The n-th term of the chosen sequence, exactly.
pub fn seq(id: SequenceId, n: usize) -> BigUint {
    seq_prefix(id, n).pop().unwrap()
}

/// Terms `0..=n` of the chosen sequence.
pub fn seq_prefix(id: SequenceId, n: usize) -> Vec<BigUint> {
    match id {
        SequenceId::Catalan => catalan_prefix(n),
        SequenceId::Motzkin => motzkin_prefix(n),
        SequenceId::SecondaryStructure => secondary_prefix(n),
        SequenceId::Fibonacci => fibonacci_prefix(n),
        SequenceId::Euler => euler_prefix(n),
    }
}

fn catalan_prefix(n: usize) -> Vec<BigUint> {
    let mut c: Vec<BigUint> = vec![BigUint::one()];
    for m in 1..=n {
        let mut v = BigUint::zero();
        for i in 0..m {
            v += &c[i] * &c[m - 1 - i];
        }
        c.push(v);
    }
    c
}

// M = 1 + zM + z²M²
fn motzkin_prefix(n: usize) -> Vec<BigUint> {
    let mut m: Vec<BigUint> = vec![BigUint::one()];
    for k in 1..=n {
        let mut v = m[k - 1].clone();
        if k >= 2 {
            for i in 0..=k - 2 {
                v += &m[i] * &m[k - 2 - i];
            }
        }
        m.push(v);
    }
    m
}

// R = 1 + zR + z²R + z³R²
fn secondary_prefix(n: usize) -> Vec<BigUint> {
    let mut r: Vec<BigUint> = vec![BigUint::one()];
    for k in 1..=n {
        let mut v = r[k - 1].clone();
        if k >= 2 {
            v += &r[k - 2];
        }
        if k >= 3 {
            for i in 0..=k - 3 {
                v += &r[i] * &r[k - 3 - i];
            }
        }
        r.push(v);
    }
    r
}

fn fibonacci_prefix(n: usize) -> Vec<BigUint> {
    let mut f: Vec<BigUint> = vec![BigUint::zero()];
    if n >= 1 {
        f.push(BigUint::one());
    }
    for k in 2..=n {
        let v = &f[k - 1] + &f[k - 2];
        f.push(v);
    }
    f.truncate(n + 1);
    f
}

/// Boustrophedon (zigzag) triangle: row n is filled left to right from the
/// reversal of row n − 1; the last entry of row n is the Euler number Eₙ.
fn euler_prefix(n: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(n + 1);
    let mut row: Vec<BigUint> = vec![BigUint::one()];
    out.push(BigUint::one()); // E₀ = 1
    for m in 1..=n {
        let mut next: Vec<BigUint> = Vec::with_capacity(m + 1);
        next.push(BigUint::zero());
        for k in 1..=m {
            let v = &next[k - 1] + &row[m - k];
            next.push(v);
        }
        out.push(next[m].clone());
        row = next;
    }
    out
}

/// A polynomial with signed integer coefficients, ascending powers of z.
pub type Poly = Vec<BigInt>;

/// A functional equation `A = P + Q·A + R·A²` over power series, with
/// polynomial `P`, `Q`, `R`. `Q` and `R` must have zero constant term so the
/// coefficients are determined by exact convolution.
#[derive(Debug, Clone)]
pub struct QuadraticSchema {
    pub constant: Poly,
    pub linear: Poly,
    pub quadratic: Poly,
}

impl QuadraticSchema {
    pub fn new(constant: Poly, linear: Poly, quadratic: Poly) -> Self {
        QuadraticSchema {
            constant,
            linear,
            quadratic,
        }
    }

    /// R = 1 + zR + z²R + z³R² (secondary structure numbers).
    pub fn secondary_structure() -> Self {
        QuadraticSchema::new(
            vec![BigInt::one()],
            vec![BigInt::zero(), BigInt::one(), BigInt::one()],
            vec![BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::one()],
        )
    }

    /// H = 1 + zH + z²H² (Motzkin numbers).
    pub fn motzkin() -> Self {
        QuadraticSchema::new(
            vec![BigInt::one()],
            vec![BigInt::zero(), BigInt::one()],
            vec![BigInt::zero(), BigInt::zero(), BigInt::one()],
        )
    }

    /// G = 1 + z(G − 1 + z)G, i.e. G = 1 + (z² − z)G + zG² (peak-form Dyck
    /// paths; G = 1 + z²·R).
    pub fn peak_form() -> Self {
        QuadraticSchema::new(
            vec![BigInt::one()],
            vec![BigInt::zero(), -BigInt::one(), BigInt::one()],
            vec![BigInt::zero(), BigInt::one()],
        )
    }
}

fn coeff(p: &Poly, k: usize) -> BigInt {
    p.get(k).cloned().unwrap_or_else(BigInt::zero)
}

/// First `n + 1` power-series coefficients of the solution of the schema.
pub fn coeffs_from_quadratic(schema: &QuadraticSchema, n: usize) -> Result<Vec<BigInt>> {
    if !coeff(&schema.linear, 0).is_zero() {
        return Err(Error::IllPosed(
            "linear part must have zero constant term".into(),
        ));
    }
    if !coeff(&schema.quadratic, 0).is_zero() {
        return Err(Error::IllPosed(
            "quadratic part must have zero constant term".into(),
        ));
    }
    let mut a: Vec<BigInt> = vec![coeff(&schema.constant, 0)];
    let mut square: Vec<BigInt> = vec![&a[0] * &a[0]]; // (A²)ₖ as far as known
    for k in 1..=n {
        let mut v = coeff(&schema.constant, k);
        for j in 1..=k {
            let q = coeff(&schema.linear, j);
            if !q.is_zero() {
                v += q * &a[k - j];
            }
            let r = coeff(&schema.quadratic, j);
            if !r.is_zero() {
                v += r * &square[k - j];
            }
        }
        a.push(v);
        // extend (A²) to index k now that aₖ is known
        let mut s = BigInt::zero();
        for i in 0..=k {
            s += &a[i] * &a[k - i];
        }
        square.push(s);
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn u64s(v: &[BigUint]) -> Vec<u64> {
        v.iter().map(|x| x.to_u64().unwrap()).collect()
    }

    #[test]
    fn catalan_values() {
        assert_eq!(
            u64s(&seq_prefix(SequenceId::Catalan, 10)),
            vec![1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796]
        );
    }

    #[test]
    fn motzkin_values() {
        assert_eq!(
            u64s(&seq_prefix(SequenceId::Motzkin, 10)),
            vec![1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188]
        );
    }

    #[test]
    fn secondary_structure_values() {
        assert_eq!(
            u64s(&seq_prefix(SequenceId::SecondaryStructure, 12)),
            vec![1, 1, 2, 4, 8, 17, 37, 82, 185, 423, 978, 2283, 5373]
        );
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(
            u64s(&seq_prefix(SequenceId::Fibonacci, 10)),
            vec![0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
        );
    }

    #[test]
    fn euler_values() {
        assert_eq!(
            u64s(&seq_prefix(SequenceId::Euler, 12)),
            vec![1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521, 353792, 2702765]
        );
    }

    #[test]
    fn euler_counts_up_down_permutations() {
        // Eₙ = #{π ∈ Sₙ : π₁ < π₂ > π₃ < …}
        for n in 0..=8usize {
            let count = crate::census::all_permutations(n)
                .into_iter()
                .filter(|p| {
                    p.entries().windows(2).enumerate().all(|(i, w)| {
                        if i % 2 == 0 {
                            w[0] < w[1]
                        } else {
                            w[0] > w[1]
                        }
                    })
                })
                .count() as u64;
            assert_eq!(count, seq(SequenceId::Euler, n).to_u64().unwrap(), "n={n}");
        }
    }

    #[test]
    fn quadratic_schema_matches_direct_recurrences() {
        let n = 20;
        let sec = coeffs_from_quadratic(&QuadraticSchema::secondary_structure(), n).unwrap();
        let mot = coeffs_from_quadratic(&QuadraticSchema::motzkin(), n).unwrap();
        // C = 1 + zC²
        let cat = coeffs_from_quadratic(
            &QuadraticSchema::new(vec![BigInt::one()], vec![], vec![BigInt::zero(), BigInt::one()]),
            n,
        )
        .unwrap();
        for k in 0..=n {
            assert_eq!(
                sec[k].to_biguint().unwrap(),
                seq(SequenceId::SecondaryStructure, k)
            );
            assert_eq!(mot[k].to_biguint().unwrap(), seq(SequenceId::Motzkin, k));
            assert_eq!(cat[k].to_biguint().unwrap(), seq(SequenceId::Catalan, k));
        }
    }

    #[test]
    fn peak_form_equals_shifted_secondary() {
        // G = 1 + z²·R
        let g = coeffs_from_quadratic(&QuadraticSchema::peak_form(), 14).unwrap();
        assert_eq!(g[0], BigInt::one());
        assert!(g[1].is_zero());
        for k in 2..=14 {
            assert_eq!(
                g[k].to_biguint().unwrap(),
                seq(SequenceId::SecondaryStructure, k - 2)
            );
        }
    }

    #[test]
    fn ill_posed_schemas_are_rejected() {
        let bad = QuadraticSchema::new(vec![BigInt::one()], vec![BigInt::one()], vec![]);
        assert!(matches!(
            coeffs_from_quadratic(&bad, 3),
            Err(Error::IllPosed(_))
        ));
        let bad = QuadraticSchema::new(vec![BigInt::one()], vec![], vec![BigInt::one()]);
        assert!(matches!(
            coeffs_from_quadratic(&bad, 3),
            Err(Error::IllPosed(_))
        ));
    }
}
