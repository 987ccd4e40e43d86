use crate::euclid::extended_gcd;
use crate::range_props::asr1_witness;
use crate::ring::EuclideanDomain;
use crate::{Error, Result};

use super::Mat;

/// `(a, b) Q = (d, 0)` with `det Q = 1` and `d` the normalized gcd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteStep<E> {
    pub d: E,
    pub q: Mat<E>,
}

/// `Q = [[x, -b/d], [y, a/d]]` from `a x + b y = d`; identity when `b = 0`
/// and `a` is already normalized, including `(0, 0)`.
pub fn hermite_reduce_pair<D: EuclideanDomain>(ring: &D, a: &D::Elem, b: &D::Elem) -> HermiteStep<D::Elem> {
    if ring.is_zero(b) && ring.is_normalized(a) {
        return HermiteStep { d: a.clone(), q: Mat::identity(ring, 2) };
    }
    let cert = extended_gcd(ring, a, b);
    let a1 = ring.exact_div(a, &cert.d).expect("gcd divides a");
    let b1 = ring.exact_div(b, &cert.d).expect("gcd divides b");
    let q = Mat::new(2, 2, vec![cert.x, ring.neg(&b1), cert.y, a1]).expect("2x2");
    HermiteStep { d: cert.d, q }
}

/// Column form: `P (a, b)^T = (d, 0)^T`, with `P` the transpose of the row step.
pub fn hermite_reduce_column<D: EuclideanDomain>(ring: &D, a: &D::Elem, b: &D::Elem) -> HermiteStep<D::Elem> {
    let step = hermite_reduce_pair(ring, a, b);
    HermiteStep { d: step.d, q: step.q.transpose() }
}

/// `P [[a, 0], [b, c]] Q = [[z, 0], [*, *]]` with `z = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoByTwoReduction<E> {
    pub a: Mat<E>,
    pub p: Mat<E>,
    pub q: Mat<E>,
    pub reduced: Mat<E>,
    pub lambda: E,
    pub z: E,
}

impl<E: Clone + PartialEq> TwoByTwoReduction<E> {
    pub fn verify<D: EuclideanDomain<Elem = E>>(&self, ring: &D) -> bool {
        let Ok(pa) = self.p.mul(ring, &self.a) else { return false };
        let Ok(paq) = pa.mul(ring, &self.q) else { return false };
        let unit_det = |m: &Mat<E>| m.det(ring).map(|d| ring.is_unit(&d)).unwrap_or(false);
        paq == self.reduced
            && unit_det(&self.p)
            && unit_det(&self.q)
            && ring.is_zero(self.reduced.get(0, 1))
            && *self.reduced.get(0, 0) == self.z
            && ring.is_unit(&self.z)
    }
}

pub fn reduce_two_by_two<D: EuclideanDomain>(
    ring: &D,
    a: &D::Elem,
    b: &D::Elem,
    c: &D::Elem,
) -> Result<TwoByTwoReduction<D::Elem>> {
    let zero = ring.zero();
    let one = ring.one();
    let m = Mat::new(2, 2, vec![a.clone(), zero.clone(), b.clone(), c.clone()])?;
    let g = extended_gcd(ring, a, &extended_gcd(ring, b, c).d).d;
    if !ring.is_one(&g) {
        return Err(Error::Precondition("gcd(a, b, c) must be 1".into()));
    }
    let (p, q, lambda) = if let Some(inv) = ring.unit_inverse(a) {
        // a is already a unit: scale the first row.
        let p = Mat::new(2, 2, vec![inv, zero.clone(), zero.clone(), one.clone()])?;
        (p, Mat::identity(ring, 2), zero.clone())
    } else if ring.is_zero(c) {
        let step = hermite_reduce_column(ring, a, b);
        (step.q, Mat::identity(ring, 2), zero.clone())
    } else {
        // gcd(c, l a + b) = 1, so the row (l a + b, c) completes to an
        // invertible matrix.
        let lambda = asr1_witness(ring, c, b, a)?.shifts.remove(0);
        let p0 = Mat::new(2, 2, vec![lambda.clone(), one.clone(), one.clone(), zero.clone()])?;
        let top = ring.add(&ring.mul(&lambda, a), b);
        let step = hermite_reduce_pair(ring, &top, c);
        debug_assert!(ring.is_one(&step.d));
        (p0, step.q, lambda)
    };
    let reduced = p.mul(ring, &m)?.mul(ring, &q)?;
    let z = reduced.get(0, 0).clone();
    let out = TwoByTwoReduction { a: m, p, q, reduced, lambda, z };
    debug_assert!(out.verify(ring));
    Ok(out)
}

/// `P A Q = D` with `D` diagonal, normalized and a divisibility chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCertificate<E> {
    pub a: Mat<E>,
    pub p: Mat<E>,
    pub q: Mat<E>,
    pub d: Mat<E>,
    pub diag: Vec<E>,
}

impl<E: Clone + PartialEq> ReductionCertificate<E> {
    pub fn rank<D: EuclideanDomain<Elem = E>>(&self, ring: &D) -> usize {
        self.diag.iter().filter(|x| !ring.is_zero(x)).count()
    }

    /// Re-checks every invariant by exact arithmetic.
    pub fn verify<D: EuclideanDomain<Elem = E>>(&self, ring: &D) -> bool {
        let (m, n) = (self.a.rows(), self.a.cols());
        if self.p.rows() != m || self.p.cols() != m || self.q.rows() != n || self.q.cols() != n {
            return false;
        }
        let Ok(product) = self.p.mul(ring, &self.a).and_then(|pa| pa.mul(ring, &self.q)) else { return false };
        let unit_det = |x: &Mat<E>| x.det(ring).map(|d| ring.is_unit(&d)).unwrap_or(false);
        let k = m.min(n);
        let rank = self.rank(ring);
        product == self.d
            && self.d.is_diagonal(ring)
            && self.diag.len() == k
            && (0..k).all(|i| *self.d.get(i, i) == self.diag[i] && ring.is_normalized(&self.diag[i]))
            && self.diag[..rank].iter().all(|x| !ring.is_zero(x))
            && self.diag.windows(2).all(|w| ring.divides(&w[0], &w[1]))
            && unit_det(&self.p)
            && unit_det(&self.q)
    }
}

/// Canonical diagonal form with transforms.
///
/// Pivots on the entry of smallest Euclidean size (ties by row, then
/// column), clears its row and column by division, and repeats until the
/// remainders vanish. A pairwise gcd/lcm sweep then repairs divisibility,
/// and the diagonal is normalized through `P`.
pub fn smith_normal_form<D: EuclideanDomain>(ring: &D, a: &Mat<D::Elem>) -> ReductionCertificate<D::Elem> {
    let (m, n) = (a.rows(), a.cols());
    let one = ring.one();
    let zero = ring.zero();
    let mut d = a.clone();
    let mut p = Mat::identity(ring, m);
    let mut q = Mat::identity(ring, n);
    let k = m.min(n);
    let mut rank = 0;
    'outer: for t in 0..k {
        let mut last_size = None;
        loop {
            let pivot = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !ring.is_zero(d.get(i, j)))
                .min_by(|&x, &y| ring.size(d.get(x.0, x.1)).cmp(&ring.size(d.get(y.0, y.1))).then(x.cmp(&y)));
            let Some((pi, pj)) = pivot else { break 'outer };
            let size = ring.size(d.get(pi, pj));
            // Each round strictly lowers the pivot size, so the loop ends.
            assert!(last_size.as_ref().is_none_or(|s| size < *s), "pivot size must decrease");
            last_size = Some(size);
            d.swap_rows(t, pi);
            p.swap_rows(t, pi);
            d.swap_cols(t, pj);
            q.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..m {
                if ring.is_zero(d.get(i, t)) {
                    continue;
                }
                let (quo, rem) = ring.div_rem(d.get(i, t), d.get(t, t));
                let nq = ring.neg(&quo);
                d.mix_rows(ring, t, i, [&one, &zero, &nq, &one]);
                p.mix_rows(ring, t, i, [&one, &zero, &nq, &one]);
                clean &= ring.is_zero(&rem);
            }
            for j in t + 1..n {
                if ring.is_zero(d.get(t, j)) {
                    continue;
                }
                let (quo, rem) = ring.div_rem(d.get(t, j), d.get(t, t));
                let nq = ring.neg(&quo);
                d.mix_cols(ring, t, j, [&one, &nq, &zero, &one]);
                q.mix_cols(ring, t, j, [&one, &nq, &zero, &one]);
                clean &= ring.is_zero(&rem);
            }
            if clean {
                break;
            }
        }
        rank = t + 1;
    }

    // diag(x, y) -> diag(g, x y / g) until each entry divides the next.
    for i in 0..rank {
        for j in i + 1..rank {
            let (x, y) = (d.get(i, i).clone(), d.get(j, j).clone());
            if ring.divides(&x, &y) {
                continue;
            }
            let cert = extended_gcd(ring, &x, &y);
            let x1 = ring.exact_div(&x, &cert.d).expect("gcd divides");
            let y1 = ring.exact_div(&y, &cert.d).expect("gcd divides");
            let row = [&cert.x, &cert.y, &ring.neg(&y1), &x1];
            d.mix_rows(ring, i, j, row);
            p.mix_rows(ring, i, j, row);
            let col = [&one, &ring.neg(&ring.mul(&y1, &cert.y)), &one, &ring.mul(&x1, &cert.x)];
            d.mix_cols(ring, i, j, col);
            q.mix_cols(ring, i, j, col);
        }
    }

    for i in 0..rank {
        let u = ring.normalizing_unit(d.get(i, i));
        if !ring.is_one(&u) {
            d.scale_row(ring, i, &u);
            p.scale_row(ring, i, &u);
        }
    }
    let diag = (0..k).map(|i| d.get(i, i).clone()).collect();
    let out = ReductionCertificate { a: a.clone(), p, q, d, diag };
    debug_assert!(out.verify(ring));
    out
}
