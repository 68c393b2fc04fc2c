//! Multiplication tables of small rings `R(2^m, p)`.
//!
//! Rows and columns are grouped into orbits under the rotation `sigma`, so
//! each block of the table is a circulant matrix. For `R(4, 3)` the block
//! leaders follow the classical layout (identity, the three non-trivial
//! principal units, then the zero divisors).

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::cyclic_ring::{CyclicPoly, GaloisElement, RingParams};
use crate::error::{Error, Result};

/// Largest ring size the printer will enumerate.
pub const MAX_TABLE_ELEMENTS: u64 = 1 << 16;

const R43_LEADERS: [&str; 5] = ["112", "310", "130", "332", "022"];

/// Every element of `R(2^m, p)`, zero included, in coefficient order.
pub fn enumerate(params: &RingParams) -> Result<Vec<GaloisElement>> {
    let p = params.p();
    let bits = params.m() as u64 * (p as u64 - 1);
    if bits > 16 {
        return Err(Error::Param(format!(
            "R(2^{}, {}) has 2^{bits} elements, more than the table limit of {MAX_TABLE_ELEMENTS}",
            params.m(),
            p
        )));
    }
    let q = 1u64 << params.m();
    let count = 1u64 << bits;
    let mask = params.mask();
    Ok((0..count)
        .map(|mut idx| {
            let mut coeffs = Vec::with_capacity(p);
            for _ in 0..p - 1 {
                coeffs.push(idx % q);
                idx /= q;
            }
            let sum = coeffs.iter().fold(0u64, |a, &c| a.wrapping_add(c));
            coeffs.push(sum.wrapping_neg() & mask);
            params.element(coeffs).expect("sum is zero by construction")
        })
        .collect())
}

/// The nonzero elements in table order.
pub fn table_order(params: &RingParams) -> Result<Vec<GaloisElement>> {
    let all = enumerate(params)?;
    let p = params.p();
    let orbit = |g: &GaloisElement| -> Vec<GaloisElement> {
        let mut out: Vec<GaloisElement> = Vec::with_capacity(p);
        for j in 0..p {
            let next = g.shift(-(j as i64));
            if out.contains(&next) {
                break;
            }
            out.push(next);
        }
        out
    };

    let leaders: Vec<GaloisElement> = if params.p() == 3 && params.m() == 2 {
        R43_LEADERS
            .iter()
            .map(|s| GaloisElement::new(CyclicPoly::from_digits(s, 2)?))
            .collect::<Result<_>>()?
    } else {
        let one = params.one();
        let mut seen: HashSet<GaloisElement> = HashSet::new();
        let mut leaders = Vec::new();
        for a in all.iter().filter(|a| !a.is_zero()) {
            if seen.contains(a) {
                continue;
            }
            let o = orbit(a);
            let leader = if o.contains(&one) {
                one.clone()
            } else {
                o.iter().min_by_key(|g| g.to_string()).cloned().unwrap()
            };
            seen.extend(o);
            leaders.push(leader);
        }
        leaders.sort_by_key(|g| (!g.is_unit(), *g != one, g.to_string()));
        leaders
    };

    let order: Vec<GaloisElement> = leaders.iter().flat_map(orbit).collect();
    debug_assert_eq!(order.len(), all.len() - 1);
    Ok(order)
}

/// Renders the product table of the nonzero elements as text: a header
/// row, then one row per element, cells separated by single spaces.
pub fn print_table(p: u64, m: u32) -> Result<String> {
    let params = RingParams::new(p, m)?;
    let order = table_order(&params)?;
    let width = order.first().map_or(1, |g| g.to_string().len());
    let mut out = String::new();
    write!(out, "{:>width$}", "*").unwrap();
    for g in &order {
        write!(out, " {:>width$}", g.to_string()).unwrap();
    }
    out.push('\n');
    for a in &order {
        write!(out, "{:>width$}", a.to_string()).unwrap();
        for b in &order {
            write!(out, " {:>width$}", (a * b).to_string()).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

/// Parses [`print_table`] output back into `(row, column, product)` cells.
pub fn parse_table(text: &str) -> Result<Vec<(String, String, String)>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| Error::Format("empty table".into()))?
        .split_whitespace()
        .skip(1)
        .collect();
    let mut cells = Vec::new();
    for line in lines {
        let mut fields = line.split_whitespace();
        let row = fields
            .next()
            .ok_or_else(|| Error::Format("blank row".into()))?;
        let values: Vec<&str> = fields.collect();
        if values.len() != header.len() {
            return Err(Error::Format(format!(
                "row {row} has {} cells, header has {}",
                values.len(),
                header.len()
            )));
        }
        for (col, v) in header.iter().zip(values) {
            cells.push((row.to_string(), col.to_string(), v.to_string()));
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r43_layout() {
        let t = print_table(3, 2).unwrap();
        let cells = parse_table(&t).unwrap();
        assert_eq!(cells.len(), 225);
        let find = |r: &str, c: &str| {
            cells
                .iter()
                .find(|(a, b, _)| a == r && b == c)
                .map(|x| x.2.clone())
                .unwrap()
        };
        assert_eq!(find("022", "220"), "000");
        assert_eq!(find("310", "130"), "332");
        let header: Vec<_> = t
            .lines()
            .next()
            .unwrap()
            .split_whitespace()
            .skip(1)
            .collect();
        assert_eq!(
            header,
            "112 211 121 310 031 103 130 013 301 332 233 323 022 202 220"
                .split(' ')
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn r23_is_gf4() {
        let r = RingParams::new(3, 1).unwrap();
        let order = table_order(&r).unwrap();
        assert_eq!(order.len(), 3);
        assert_eq!(order[0], r.one());
        // brute force: every nonzero element of GF(4) has an inverse
        for a in &order {
            assert!(order.iter().any(|b| a * b == r.one()));
        }
        let cells = parse_table(&print_table(3, 1).unwrap()).unwrap();
        assert_eq!(cells.len(), 9);
    }

    #[test]
    fn guard() {
        assert_eq!(
            enumerate(&RingParams::new(3, 8).unwrap()).unwrap().len(),
            1 << 16
        );
        assert!(print_table(3, 9).is_err());
        assert!(print_table(5, 5).is_err());
        assert!(print_table(7, 2).is_err());
    }

    #[test]
    fn orders_cover_every_nonzero_element() {
        for (p, m) in [(3, 3), (5, 2), (5, 4), (11, 1), (13, 1)] {
            let r = RingParams::new(p, m).unwrap();
            let mut order: Vec<String> = table_order(&r)
                .unwrap()
                .iter()
                .map(|g| g.to_string())
                .collect();
            let n = order.len();
            order.sort();
            order.dedup();
            assert_eq!(order.len(), n);
            assert_eq!(n as u64, (1u64 << (m as u64 * (p - 1))) - 1);
        }
    }
}
