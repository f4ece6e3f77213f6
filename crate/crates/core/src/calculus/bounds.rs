//! Slice-genus and splitting-number bounds derived from sₙ.

use num_integer::Integer;

use super::value::SnValue;
use super::CalculusError;
use crate::diagram::LinkDiagram;
use crate::notation::torus_link;

/// Lower bound on the slice genus: ⌈(|s|/(n−1) − l + 1)/2⌉, never negative.
/// On an interval the value of least magnitude is used.
pub fn g4_lower_bound(v: &SnValue, l: usize) -> i64 {
    let n1 = v.n as i64 - 1;
    let s = v.least_magnitude().abs();
    let num = s - (l as i64 - 1) * n1;
    if num <= 0 {
        0
    } else {
        Integer::div_ceil(&num, &(2 * n1))
    }
}

/// Three-genus and slice genus of a link with a positive diagram, which agree.
pub fn genus_positive(diagram: &LinkDiagram) -> Result<(i64, i64), CalculusError> {
    if !diagram.is_positive() {
        return Err(CalculusError::NotPositiveDiagram);
    }
    let st = diagram.resolution_stats();
    let twice = 2 - (st.r as i64 - st.c as i64 + st.l as i64);
    if twice % 2 != 0 {
        return Err(CalculusError::NonIntegerGenus);
    }
    Ok((twice / 2, twice / 2))
}

pub fn torus_g4(p: u64, q: u64) -> i64 {
    let (p, q) = (p as i64, q as i64);
    ((p - 1) * (q - 1) + 1 - p.gcd(&q)) / 2
}

/// Splitting-number lower bound from the values of a link and of its
/// components, each component a knot.
pub fn sp_lower_bound(
    link: &SnValue,
    components: &[SnValue],
    l: usize,
) -> Result<i64, CalculusError> {
    let n = link.n;
    if let Some(c) = components.iter().find(|c| c.n != n) {
        return Err(CalculusError::MixedN {
            expected: n,
            found: c.n,
        });
    }
    let s = link.value().ok_or(CalculusError::InexactInput)?;
    let mut sum = 0;
    for c in components {
        sum += c.value().ok_or(CalculusError::InexactInput)?;
    }
    let n1 = n as i64 - 1;
    let gap = (s - sum - n1 * (l as i64 - 1)).abs();
    Ok(Integer::div_ceil(&gap, &(2 * n1)))
}

/// Splitting number of T(P, Q): with l = gcd(P, Q) and P = lp, Q = lq it is
/// l(l − 1)pq/2.
pub fn torus_splitting(p: u64, q: u64) -> u64 {
    let l = p.gcd(&q);
    if l == 0 {
        return 0;
    }
    l * (l - 1) * (p / l) * (q / l) / 2
}

/// Crossing changes that split T(lp, lq) as built by [`torus_link`]: the
/// components are taken in order, and each one is lifted above all later
/// components by changing the crossings where it passes under them.
pub fn torus_split_schedule(l: usize, p: usize, q: usize) -> Result<Vec<usize>, CalculusError> {
    if p.gcd(&q) != 1 {
        return Err(CalculusError::NotCoprime { p, q });
    }
    let d = torus_link(l * p, l * q);
    let mut schedule = Vec::new();
    for k in 0..d.crossing_count() {
        let (under, over) = d.strand_components(k);
        if under < over {
            schedule.push(k);
        }
    }
    Ok(schedule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::expr::sn_positive;
    use crate::notation::{parse_braid, parse_pd};

    fn exact(n: u32, s: i64) -> SnValue {
        SnValue::exact(n, s, "test")
    }

    #[test]
    fn genus_bounds() {
        assert_eq!(g4_lower_bound(&exact(2, -2), 1), 1);
        assert_eq!(g4_lower_bound(&exact(2, -3), 2), 1);
        assert_eq!(g4_lower_bound(&exact(2, 0), 1), 0);
        assert_eq!(g4_lower_bound(&exact(3, -4), 1), 1);
        assert_eq!(g4_lower_bound(&SnValue::interval(2, -1, 5, vec![]), 1), 0);
        assert_eq!(g4_lower_bound(&SnValue::interval(2, 4, 6, vec![]), 1), 2);
    }

    #[test]
    fn positive_genus() {
        let t = parse_pd("X[4,2,5,1] X[6,4,1,3] X[2,6,3,5]").unwrap();
        assert_eq!(genus_positive(&t).unwrap(), (1, 1));
        assert_eq!(
            genus_positive(&parse_braid(&[1, 1], 2).unwrap()).unwrap(),
            (0, 0)
        );
        assert_eq!(genus_positive(&torus_link(3, 4)).unwrap(), (3, 3));
        assert_eq!(
            genus_positive(&t.mirror()),
            Err(CalculusError::NotPositiveDiagram)
        );
    }

    #[test]
    fn torus_genus() {
        assert_eq!(torus_g4(2, 3), 1);
        assert_eq!(torus_g4(1, 7), 0);
        assert_eq!(torus_g4(2, 4), 1);
        for p in 1..=5u64 {
            for q in 1..=5u64 {
                let d = torus_link(p as usize, q as usize);
                let v = sn_positive(&d, 2).unwrap();
                assert_eq!(
                    g4_lower_bound(&v, d.component_count()),
                    torus_g4(p, q),
                    "T({p},{q})"
                );
            }
        }
    }

    #[test]
    fn splitting_bounds() {
        let t24 = sn_positive(&torus_link(2, 4), 2).unwrap();
        assert_eq!(sp_lower_bound(&t24, &[exact(2, 0), exact(2, 0)], 2), Ok(2));
        let t33 = sn_positive(&torus_link(3, 3), 2).unwrap();
        assert_eq!(
            sp_lower_bound(&t33, &[exact(2, 0), exact(2, 0), exact(2, 0)], 3),
            Ok(3)
        );
        assert_eq!(
            sp_lower_bound(&exact(2, 1), &[exact(2, 0), exact(2, 0)], 2),
            Ok(0)
        );
        assert_eq!(
            sp_lower_bound(&exact(2, 1), &[exact(3, 0)], 1),
            Err(CalculusError::MixedN {
                expected: 2,
                found: 3
            })
        );
        let wide = SnValue::interval(2, 0, 2, vec![]);
        assert_eq!(
            sp_lower_bound(&wide, &[], 1),
            Err(CalculusError::InexactInput)
        );
        assert_eq!(torus_splitting(2, 4), 2);
        assert_eq!(torus_splitting(3, 3), 3);
        assert_eq!(torus_splitting(2, 5), 0);
    }

    #[test]
    fn schedules_split() {
        for (p, q) in [(1, 1), (1, 2), (2, 1), (2, 3), (3, 2), (1, 3)] {
            for l in 1..=4usize {
                let schedule = torus_split_schedule(l, p, q).unwrap();
                assert_eq!(
                    schedule.len() as u64,
                    torus_splitting((l * p) as u64, (l * q) as u64),
                    "l={l} p={p} q={q}"
                );
                let mut d = torus_link(l * p, l * q);
                for &k in &schedule {
                    d = d.crossing_change(k).unwrap();
                }
                for i in 0..l {
                    for j in i + 1..l {
                        assert_eq!(d.linking_number(i, j), 0);
                    }
                }
            }
        }
        assert_eq!(
            torus_split_schedule(2, 2, 4),
            Err(CalculusError::NotCoprime { p: 2, q: 4 })
        );
    }
}
