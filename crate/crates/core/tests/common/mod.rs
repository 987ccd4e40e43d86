//! Reference implementations used as oracles. They share no code with the
//! library: plain machine integers, naive polynomial arithmetic and
//! cofactor expansion.
#![allow(dead_code)]

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Primes of `n` with multiplicity, by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All `k`-element subsets of `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Determinant by cofactor expansion along the first row.
pub fn det_int(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut acc = 0;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc += sign * m[0][j] * det_int(&minor);
    }
    acc
}

/// Non-negative gcd of all `k x k` minors.
pub fn minor_gcd_int(m: &[Vec<i128>], k: usize) -> i128 {
    let (rows, cols) = (m.len(), m[0].len());
    let mut g = 0;
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
            g = gcd_i128(g, det_int(&sub));
        }
    }
    g
}

/// Dense polynomials over `F_p`, ascending coefficients, no trailing zeros.
pub mod fp {
    pub type P = Vec<u64>;

    pub fn trim(mut a: P) -> P {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn add(p: u64, a: &P, b: &P) -> P {
        let n = a.len().max(b.len());
        trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % p).collect())
    }

    pub fn neg(p: u64, a: &P) -> P {
        trim(a.iter().map(|&c| (p - c) % p).collect())
    }

    pub fn mul(p: u64, a: &P, b: &P) -> P {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn inv(p: u64, c: u64) -> u64 {
        (1..p).find(|&x| x * c % p == 1).expect("nonzero residue")
    }

    /// Remainder of `a` by the nonzero `b`.
    pub fn rem(p: u64, a: &P, b: &P) -> P {
        let mut r = a.clone();
        let lead_inv = inv(p, *b.last().unwrap());
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() * lead_inv % p;
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - c * bc % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn monic(p: u64, a: &P) -> P {
        match a.last() {
            None => Vec::new(),
            Some(&l) => {
                let u = inv(p, l);
                a.iter().map(|&c| c * u % p).collect()
            }
        }
    }

    pub fn gcd(p: u64, a: &P, b: &P) -> P {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = rem(p, &a, &b);
            a = std::mem::replace(&mut b, r);
        }
        monic(p, &a)
    }

    pub fn det(p: u64, m: &[Vec<P>]) -> P {
        let n = m.len();
        if n == 0 {
            return vec![1];
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = Vec::new();
        for j in 0..n {
            if m[0][j].is_empty() {
                continue;
            }
            let minor: Vec<Vec<P>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = mul(p, &m[0][j], &det(p, &minor));
            acc = if j % 2 == 0 { add(p, &acc, &term) } else { add(p, &acc, &neg(p, &term)) };
        }
        acc
    }

    /// Monic gcd of all `k x k` minors (empty when they all vanish).
    pub fn minor_gcd(p: u64, m: &[Vec<P>], k: usize) -> P {
        let (rows, cols) = (m.len(), m[0].len());
        let mut g = Vec::new();
        for rs in super::subsets(rows, k) {
            for cs in super::subsets(cols, k) {
                let sub: Vec<Vec<P>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
                g = gcd(p, &g, &det(p, &sub));
            }
        }
        g
    }
}

/// Smallest set containing `gens` and 0 that is closed under addition and
/// under multiplication by ring elements on the given side(s), computed as
/// a plain fixpoint over the ring's operation tables.
pub fn ideal_oracle(
    ring: &ringlab::ring::FiniteRing,
    right: bool,
    left: bool,
    gens: &[ringlab::ring::FElem],
) -> std::collections::BTreeSet<u32> {
    use ringlab::ring::FElem;
    let elems: Vec<FElem> = ring.elements().collect();
    let mut set: std::collections::BTreeSet<u32> = gens.iter().map(|g| g.0).collect();
    set.insert(ring.sub_elem(elems[0], elems[0]).0);
    loop {
        let current: Vec<FElem> = set.iter().map(|&i| FElem(i)).collect();
        let mut next = set.clone();
        for &x in &current {
            for &y in &current {
                next.insert(ring.add_elem(x, y).0);
            }
            for &r in &elems {
                if right {
                    next.insert(ring.mul_elem(x, r).0);
                }
                if left {
                    next.insert(ring.mul_elem(r, x).0);
                }
            }
        }
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}
