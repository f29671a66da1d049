//! Ultrametrics on finite sets: product ultrametrics with a decay sequence,
//! exhaustive verification of the strong triangle inequality, balls, and
//! quotient metrics on finite abelian groups.

use std::fmt::Display;
use std::io::{Read, Write};
use std::ops::Add;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{subgroup_generated, FiniteAbelianGroup};
use crate::scalar::{rational_vec, Rational};

/// Strictly decreasing sequence `t_0 > t_1 > … > t_L > 0` of rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DecayWire", into = "DecayWire")]
pub struct DecaySeq(Vec<Rational>);

#[derive(Serialize, Deserialize)]
struct DecayWire {
    #[serde(with = "rational_vec")]
    t: Vec<Rational>,
}

impl TryFrom<DecayWire> for DecaySeq {
    type Error = Error;
    fn try_from(w: DecayWire) -> Result<Self> {
        DecaySeq::new(w.t)
    }
}

impl From<DecaySeq> for DecayWire {
    fn from(d: DecaySeq) -> Self {
        DecayWire { t: d.0 }
    }
}

impl DecaySeq {
    pub fn new(t: Vec<Rational>) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::InvalidArgument("decay sequence is empty".into()));
        }
        if t.iter().any(|x| *x <= Rational::zero()) {
            return Err(Error::InvalidArgument("decay terms must be positive".into()));
        }
        if t.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidArgument("decay sequence must be strictly decreasing".into()));
        }
        Ok(DecaySeq(t))
    }

    /// `t_l = 1/R_l` for the partial products `R_0 = 1, R_1, …`.
    pub fn reciprocal(partial_products: &[num_bigint::BigInt]) -> Result<Self> {
        Self::new(partial_products.iter().map(|r| Rational::new(1.into(), r.clone())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, l: usize) -> Option<&Rational> {
        self.0.get(l)
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }
}

/// `max_i min(d_i(x_i, y_i), t_i)` over the coordinates of two tuples.
/// Coordinate `i` is capped by `t[i]`.
pub fn product_ultrametric<X, M>(x: &[X], y: &[X], metrics: &[M], t: &DecaySeq) -> Result<Rational>
where
    M: Fn(&X, &X) -> Rational,
{
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { expected: x.len(), got: y.len() });
    }
    if metrics.len() != x.len() {
        return Err(Error::LengthMismatch { expected: x.len(), got: metrics.len() });
    }
    if x.len() > t.len() {
        return Err(Error::LengthMismatch { expected: t.len(), got: x.len() });
    }
    let mut best = Rational::zero();
    for (i, d) in metrics.iter().enumerate() {
        let di = d(&x[i], &y[i]);
        let capped = if di < t.0[i] { di } else { t.0[i].clone() };
        if capped > best {
            best = capped;
        }
    }
    Ok(best)
}

/// Finite metric space given by its distance table.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetric<T> {
    pub points: Vec<String>,
    pub table: Vec<Vec<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UltrametricCheck {
    Pass,
    /// `d(x, z) > max(d(x, y), d(y, z))`.
    Violation { x: usize, y: usize, z: usize },
}

impl<T> FiniteMetric<T>
where
    T: Clone + PartialOrd + Zero + Add<Output = T>,
{
    pub fn new(points: Vec<String>, table: Vec<Vec<T>>) -> Result<Self> {
        let n = points.len();
        if table.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: table.len() });
        }
        if let Some(row) = table.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch { expected: n, got: row.len() });
        }
        for i in 0..n {
            if !table[i][i].is_zero() {
                return Err(Error::InvalidArgument(format!("d({i}, {i}) is not zero")));
            }
            for j in 0..n {
                if table[i][j] != table[j][i] {
                    return Err(Error::InvalidArgument(format!("table is not symmetric at ({i}, {j})")));
                }
                if i != j && !(table[i][j] > T::zero()) {
                    return Err(Error::InvalidArgument(format!("d({i}, {j}) must be positive")));
                }
            }
        }
        Ok(FiniteMetric { points, table })
    }

    /// Table built from a distance function on labelled points.
    pub fn from_fn<P, F>(points: &[P], d: F) -> Result<Self>
    where
        P: ToString,
        F: Fn(&P, &P) -> T,
    {
        let table = points.iter().map(|x| points.iter().map(|y| d(x, y)).collect()).collect();
        Self::new(points.iter().map(ToString::to_string).collect(), table)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn d(&self, x: usize, y: usize) -> &T {
        &self.table[x][y]
    }

    /// First ordered triple violating the triangle inequality.
    pub fn triangle_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.table[x][z] > self.table[x][y].clone() + self.table[y][z].clone() {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// `{y : d(center, y) < radius}`, or `≤` for a closed ball.
    pub fn ball(&self, center: usize, radius: &T, closed: bool) -> Vec<usize> {
        (0..self.len())
            .filter(|&y| {
                let d = &self.table[center][y];
                if closed {
                    d <= radius
                } else {
                    d < radius
                }
            })
            .collect()
    }
}

/// Exhaustive check of `d(x, z) ≤ max(d(x, y), d(y, z))` over all ordered
/// triples, in lexicographic order.
pub fn is_ultrametric<T: PartialOrd>(m: &FiniteMetric<T>) -> UltrametricCheck {
    let n = m.points.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (a, b) = (&m.table[x][y], &m.table[y][z]);
                let bound = if a >= b { a } else { b };
                if m.table[x][z] > *bound {
                    return UltrametricCheck::Violation { x, y, z };
                }
            }
        }
    }
    UltrametricCheck::Pass
}

impl<T> FiniteMetric<T>
where
    T: Display,
{
    /// Header row of labels followed by one row of distances per point.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Parse(e.to_string());
        out.write_record(&self.points).map_err(io)?;
        for row in &self.table {
            out.write_record(row.iter().map(ToString::to_string)).map_err(io)?;
        }
        out.flush().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(())
    }
}

impl<T> FiniteMetric<T>
where
    T: Clone + PartialOrd + Zero + Add<Output = T> + FromStr,
{
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
        let io = |e: csv::Error| Error::Parse(e.to_string());
        let points: Vec<String> = rdr.headers().map_err(io)?.iter().map(|s| s.trim().to_string()).collect();
        let mut table = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(io)?;
            let row = rec
                .iter()
                .map(|s| s.trim().parse::<T>().map_err(|_| Error::Parse(format!("bad distance {s:?}"))))
                .collect::<Result<Vec<T>>>()?;
            table.push(row);
        }
        Self::new(points, table)
    }
}

/// Quotient of a group metric by a subgroup.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMetric<T> {
    /// Cosets as sorted element indices; the first entry is the representative.
    pub cosets: Vec<Vec<usize>>,
    pub metric: FiniteMetric<T>,
}

/// `d'(aH, bH) = min_{h1, h2 ∈ H} d(a + h1, b + h2)` for a metric `d` on the
/// elements of `group` (in index order) that is invariant under translation
/// by `H`. The subgroup is the one generated by `gens`.
pub fn quotient_metric<T>(group: &FiniteAbelianGroup, gens: &[Vec<u64>], d: &FiniteMetric<T>) -> Result<QuotientMetric<T>>
where
    T: Clone + PartialOrd + Zero + Add<Output = T>,
{
    let n = group.order();
    if d.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: d.len() });
    }
    let h = subgroup_generated(group, gens)?;
    for x in 0..n {
        for y in 0..n {
            for &s in &h {
                if d.table[group.add(x, s)][group.add(y, s)] != d.table[x][y] {
                    return Err(Error::NotInvariant { x, y, h: s });
                }
            }
        }
    }
    let mut coset_of = vec![usize::MAX; n];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        if coset_of[a] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = h.iter().map(|&s| group.add(a, s)).collect();
        members.sort_unstable();
        for &m in &members {
            coset_of[m] = cosets.len();
        }
        cosets.push(members);
    }
    let k = cosets.len();
    let mut table = vec![vec![T::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let mut best: Option<T> = None;
            for &a in &cosets[i] {
                for &b in &cosets[j] {
                    let v = &d.table[a][b];
                    if best.as_ref().is_none_or(|cur| v < cur) {
                        best = Some(v.clone());
                    }
                }
            }
            table[i][j] = best.expect("cosets are non-empty");
        }
    }
    let labels = cosets.iter().map(|c| format!("{}+H", d.points[c[0]])).collect();
    let metric = FiniteMetric::new(labels, table)?;
    if let Some((x, y, z)) = metric.triangle_violation() {
        return Err(Error::TriangleViolation { x, y, z });
    }
    Ok(QuotientMetric { cosets, metric })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use num_traits::One;

    fn discrete(n: usize) -> FiniteMetric<Rational> {
        let pts: Vec<usize> = (0..n).collect();
        FiniteMetric::from_fn(&pts, |a, b| if a == b { Rational::zero() } else { Rational::one() }).unwrap()
    }

    /// `|x − y|_p` by repeated division.
    fn padic_dist(p: i64, x: i64, y: i64) -> Rational {
        let mut diff = (x - y).abs();
        if diff == 0 {
            return Rational::zero();
        }
        let mut scale = 1i64;
        while diff % p == 0 {
            diff /= p;
            scale *= p;
        }
        ratio(1, scale)
    }

    fn cyclic(n: i64) -> FiniteMetric<Rational> {
        let pts: Vec<i64> = (0..n).collect();
        FiniteMetric::from_fn(&pts, |a, b| {
            let r = (a - b).rem_euclid(n);
            ratio(r.min(n - r), 1)
        })
        .unwrap()
    }

    #[test]
    fn decay_sequence_validation() {
        assert!(DecaySeq::new(vec![ratio(1, 1), ratio(1, 2)]).is_ok());
        assert!(DecaySeq::new(vec![ratio(1, 2), ratio(1, 2)]).is_err());
        assert!(DecaySeq::new(vec![ratio(1, 1), ratio(0, 1)]).is_err());
        assert!(DecaySeq::new(vec![]).is_err());
        let json = serde_json::to_string(&DecaySeq::new(vec![ratio(1, 1), ratio(1, 3)]).unwrap()).unwrap();
        assert_eq!(json, r#"{"t":["1","1/3"]}"#);
        assert!(serde_json::from_str::<DecaySeq>(r#"{"t":["1","2"]}"#).is_err());
    }

    #[test]
    fn product_ultrametric_examples() {
        let t = DecaySeq::new(vec![ratio(1, 1), ratio(1, 2), ratio(1, 3)]).unwrap();
        let disc = |a: &u8, b: &u8| if a == b { Rational::zero() } else { Rational::one() };
        let metrics = [disc, disc, disc];
        assert_eq!(product_ultrametric(&[1u8, 2, 3], &[1, 2, 3], &metrics, &t).unwrap(), Rational::zero());
        assert_eq!(product_ultrametric(&[1u8, 2, 3], &[1, 5, 6], &metrics, &t).unwrap(), ratio(1, 2));

        let t1 = DecaySeq::new(vec![ratio(1, 1)]).unwrap();
        let d3 = |a: &i64, b: &i64| padic_dist(3, *a, *b);
        assert_eq!(product_ultrametric(&[1i64], &[10], &[d3], &t1).unwrap(), ratio(1, 9));

        assert!(product_ultrametric(&[1u8, 2], &[1], &metrics[..2], &t).is_err());
        let t_short = DecaySeq::new(vec![ratio(1, 1)]).unwrap();
        assert!(product_ultrametric(&[1u8, 2], &[1, 2], &metrics[..2], &t_short).is_err());
    }

    #[test]
    fn ultrametric_check_examples() {
        assert_eq!(is_ultrametric(&discrete(5)), UltrametricCheck::Pass);

        let pts = [0.0f64, 1.0, 2.0];
        let euclid = FiniteMetric::from_fn(&pts, |a, b| (a - b).abs()).unwrap();
        assert_eq!(is_ultrametric(&euclid), UltrametricCheck::Violation { x: 0, y: 1, z: 2 });

        let pts: Vec<i64> = (0..9).collect();
        let m = FiniteMetric::from_fn(&pts, |a, b| padic_dist(3, *a, *b)).unwrap();
        assert_eq!(is_ultrametric(&m), UltrametricCheck::Pass);
    }

    #[test]
    fn metric_table_validation() {
        let bad = FiniteMetric::new(vec!["a".into(), "b".into()], vec![vec![0.0, 1.0], vec![2.0, 0.0]]);
        assert!(bad.is_err());
        let bad = FiniteMetric::new(vec!["a".into(), "b".into()], vec![vec![0.0, 0.0], vec![0.0, 0.0]]);
        assert!(bad.is_err());
        let bad = FiniteMetric::new(vec!["a".into()], vec![vec![1.0]]);
        assert!(bad.is_err());
    }

    #[test]
    fn quotient_examples() {
        let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
        let q = quotient_metric(&z4, &[vec![2]], &cyclic(4)).unwrap();
        assert_eq!(q.cosets, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(q.metric.table[0][1], Rational::one());

        let whole = quotient_metric(&z4, &[vec![1]], &cyclic(4)).unwrap();
        assert_eq!(whole.metric.table, vec![vec![Rational::zero()]]);

        let same = quotient_metric(&z4, &[], &cyclic(4)).unwrap();
        assert_eq!(same.metric.table, cyclic(4).table);
    }

    #[test]
    fn quotient_rejects_non_invariant_metric() {
        let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
        let pts: Vec<i64> = (0..4).collect();
        let line = FiniteMetric::from_fn(&pts, |a, b| ratio((a - b).abs(), 1)).unwrap();
        let err = quotient_metric(&z4, &[vec![2]], &line).unwrap_err();
        assert!(matches!(err, Error::NotInvariant { .. }), "{err:?}");
    }

    #[test]
    fn csv_round_trip() {
        let m = cyclic(3);
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "0,1,2\n0,1,1\n1,0,1\n1,1,0\n");
        let back: FiniteMetric<Rational> = FiniteMetric::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, m);
        let f: FiniteMetric<f64> = FiniteMetric::read_csv("a,b\n0,0.5\n0.5,0\n".as_bytes()).unwrap();
        assert_eq!(f.table[0][1], 0.5);
        assert!(FiniteMetric::<f64>::read_csv("a,b\n0,x\n1,0\n".as_bytes()).is_err());
    }

    fn check_ball_properties(m: &FiniteMetric<Rational>) {
        let n = m.len();
        let mut radii: Vec<Rational> = m.table.iter().flatten().cloned().collect();
        radii.push(ratio(1, 1_000_000));
        radii.sort();
        radii.dedup();
        for x in 0..n {
            for r in &radii {
                let open = m.ball(x, r, false);
                for &z in &open {
                    assert_eq!(m.ball(z, r, false), open, "open ball recentred at {z}");
                }
                let closed = m.ball(x, r, true);
                for &z in &closed {
                    assert_eq!(m.ball(z, r, true), closed);
                }
                // closed balls are open: every outside point stays a positive distance away
                let outside: Vec<usize> = (0..n).filter(|y| !closed.contains(y)).collect();
                for y in outside {
                    let gap = closed.iter().map(|&b| m.table[y][b].clone()).min().unwrap();
                    assert!(gap > *r);
                }
            }
        }
    }

    #[test]
    fn balls_in_padic_tables() {
        let pts: Vec<i64> = (0..27).collect();
        check_ball_properties(&FiniteMetric::from_fn(&pts, |a, b| padic_dist(3, *a, *b)).unwrap());
        let pts: Vec<i64> = (0..64).collect();
        check_ball_properties(&FiniteMetric::from_fn(&pts, |a, b| padic_dist(2, *a, *b)).unwrap());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn product_of_ultrametrics_is_ultrametric(
                tuples in proptest::collection::vec(proptest::collection::vec(0i64..30, 3), 2..14),
            ) {
                let t = DecaySeq::new(vec![ratio(1, 1), ratio(1, 2), ratio(1, 5)]).unwrap();
                let d2 = |a: &i64, b: &i64| padic_dist(2, *a, *b);
                let d3 = |a: &i64, b: &i64| padic_dist(3, *a, *b);
                let disc = |a: &i64, b: &i64| if a == b { Rational::zero() } else { Rational::one() };
                let metrics: [&dyn Fn(&i64, &i64) -> Rational; 3] = [&d2, &d3, &disc];
                let mut pts = tuples;
                pts.sort();
                pts.dedup();
                let labels: Vec<String> = pts.iter().map(|p| format!("{p:?}")).collect();
                let table = pts
                    .iter()
                    .map(|x| pts.iter().map(|y| product_ultrametric(x, y, &metrics, &t).unwrap()).collect())
                    .collect();
                let m = FiniteMetric::new(labels, table).unwrap();
                prop_assert_eq!(is_ultrametric(&m), UltrametricCheck::Pass);
                check_ball_properties(&m);
            }
        }
    }
}
