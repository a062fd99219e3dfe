//! Betti numbers of Hilbert schemes of points on a surface with
//! `β_1 = β_3 = 0`, read off from `a_{m,k}(n)` with `k = β_2 + 2`:
//! `β_{2n+2m}(S^{[n]}) = a_{m,k}(n)` and all odd Betti numbers vanish.

use num_bigint::BigInt;
use num_traits::Zero;

use super::output::{OutputRecord, Row};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::series::CoefficientTable;

fn surface_k(b2: i64) -> Result<i64> {
    if b2 < 1 {
        return Err(Error::invalid("b2", format!("must be >= 1, got {b2}")));
    }
    Ok(b2 + 2)
}

/// `β_0 … β_{4n}` of the Hilbert scheme of `n` points.
pub fn betti_numbers(b2: i64, n: usize, exec: Exec) -> Result<Vec<BigInt>> {
    let table = CoefficientTable::new(surface_k(b2)?, n)?;
    betti_from_table(&table, n, exec)
}

fn betti_from_table(table: &CoefficientTable, n: usize, exec: Exec) -> Result<Vec<BigInt>> {
    let ms: Vec<i64> = (-(n as i64)..=n as i64).collect();
    let even = table.a_values(&ms, n, exec)?;
    let mut out = Vec::with_capacity(4 * n + 1);
    for (i, v) in even.into_iter().enumerate() {
        if i > 0 {
            out.push(BigInt::zero());
        }
        out.push(v);
    }
    Ok(out)
}

/// Betti numbers together with the multiplicities `b_{J,k}(n)` of the
/// `(2J+1)`-dimensional `SL(2)` representations in the cohomology.
pub fn betti_table(b2: i64, n: usize, exec: Exec) -> Result<OutputRecord> {
    let k = surface_k(b2)?;
    let table = CoefficientTable::new(k, n)?;
    let betti = betti_from_table(&table, n, exec)?;
    let multiplets = table.b_row(n, exec)?;
    let mut rec = OutputRecord::new("betti")
        .param("b2", b2)
        .param("k", k)
        .param("n", n);
    for (i, v) in betti.into_iter().enumerate() {
        rec.rows.push(
            Row::new()
                .with("kind", "betti")
                .with("index", i as i64)
                .with("value", v),
        );
    }
    for (j, v) in multiplets.into_iter().enumerate() {
        rec.rows.push(
            Row::new()
                .with("kind", "multiplet")
                .with("index", j as i64)
                .with("value", v),
        );
    }
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::colored_partition_series;

    #[test]
    fn one_point_is_the_surface() {
        for b2 in 1..=10 {
            let b = betti_numbers(b2, 1, Exec::Sequential).unwrap();
            let expect: Vec<BigInt> = [1, 0, b2, 0, 1].iter().map(|&v| BigInt::from(v)).collect();
            assert_eq!(b, expect);
        }
    }

    #[test]
    fn zero_points_is_a_point() {
        assert_eq!(
            betti_numbers(3, 0, Exec::Sequential).unwrap(),
            vec![BigInt::from(1)]
        );
    }

    #[test]
    fn poincare_at_one_counts_colored_partitions() {
        let b2 = 22;
        let p = colored_partition_series(b2 + 2, 12).unwrap();
        for n in 0..=12 {
            let total: BigInt = betti_numbers(b2, n, Exec::Parallel).unwrap().iter().sum();
            assert_eq!(total, p.coeff(n));
        }
    }

    #[test]
    fn two_points_on_the_plane() {
        // Hilbert scheme of 2 points on P^2: Poincaré polynomial 1 + 2t^2 + 3t^4 + 2t^6 + t^8
        let b = betti_numbers(1, 2, Exec::Sequential).unwrap();
        let expect: Vec<BigInt> = [1, 0, 2, 0, 3, 0, 2, 0, 1]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(b, expect);
    }

    #[test]
    fn table_contains_multiplets() {
        let rec = betti_table(1, 2, Exec::Sequential).unwrap();
        let multiplets: Vec<_> = rec
            .rows
            .iter()
            .filter(|r| r.get("kind") == Some(&"multiplet".into()))
            .collect();
        assert_eq!(multiplets.len(), 3);
        assert!(betti_table(0, 2, Exec::Sequential).is_err());
    }
}
