//! Width and height from plain linear algebra on section spaces, compared
//! with the module pipeline and the Čech height.
//!
//! A section is a pair `(a, b)` of polynomials in `z` and `u^(+-1)` on the
//! first chart whose image `(z^j a + p b, z^-j b)` is regular on the second
//! chart, i.e. every monomial `u^r z^s` in it has `s <= k r`.

use localchi::algebra::Rational;
use localchi::bundle::CanonicalBundle;
use localchi::invariants::{height_direct, local_charge, sample_extension_classes, width};
use localchi::ComputeOptions;

const P: u64 = 1_000_000_007;

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

fn residue(q: &Rational) -> u64 {
    let n = q.numer().mod_u(P as u32) as u64;
    let d = q.denom().mod_u(P as u32) as u64;
    n * pow(d, P - 2) % P
}

/// Rank of a dense matrix over `GF(P)`, restricted to the given columns.
fn rank(rows: &[Vec<u64>], cols: &[usize]) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
    let mut rank = 0;
    for c in 0..cols.len() {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, pivot);
        let inv = pow(m[rank][c], P - 2);
        for x in m[rank].iter_mut() {
            *x = *x * inv % P;
        }
        let prow = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x = (*x + P - f * y % P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Unknown coefficients of `a` and `b` in `u`-degrees `rmin..=rmax`, with
/// the regularity constraints in degrees up to `rmax`.
struct System {
    /// `(is_a, r, s)` per column.
    vars: Vec<(bool, i64, i64)>,
    rows: Vec<Vec<u64>>,
}

fn system(b: &CanonicalBundle, rmin: i64, rmax: i64) -> System {
    let (k, j) = (b.k() as i64, b.j() as i64);
    let p: Vec<(i64, i64, u64)> = b.p().terms().map(|(r, s, c)| (r as i64, s, residue(c))).collect();
    let mut vars = Vec::new();
    for r in rmin..=rmax {
        for s in 0..=k * r + 2 * j {
            vars.push((true, r, s));
        }
        for s in 0..=k * r + j {
            vars.push((false, r, s));
        }
    }
    // Column contributions to the first component at u^r z^s.
    let mut first: std::collections::BTreeMap<(i64, i64), Vec<(usize, u64)>> = Default::default();
    for (col, &(is_a, r, s)) in vars.iter().enumerate() {
        if is_a {
            first.entry((r, s + j)).or_default().push((col, 1));
        } else {
            for &(pr, ps, c) in &p {
                if r + pr <= rmax {
                    first.entry((r + pr, s + ps)).or_default().push((col, c));
                }
            }
        }
    }
    let mut rows = Vec::new();
    for ((r, s), entries) in first {
        if s > k * r {
            let mut row = vec![0u64; vars.len()];
            for (col, c) in entries {
                row[col] = (row[col] + c) % P;
            }
            rows.push(row);
        }
    }
    // The second component z^-j b is regular by the range of `s`.
    System { vars, rows }
}

fn nullity(sys: &System, cols: &[usize]) -> usize {
    cols.len() - rank(&sys.rows, cols)
}

/// `h^1(E|l_N) = h^0(E|l_N) - (N + 1)(k N + 2)`, taken at the first `N`
/// where two consecutive values agree.
fn height_oracle(b: &CanonicalBundle) -> usize {
    let k = b.k() as i64;
    let mut prev = None;
    for n in 0.. {
        let sys = system(b, 0, n);
        let all: Vec<usize> = (0..sys.vars.len()).collect();
        let h1 = nullity(&sys, &all) as i64 - (n + 1) * (k * n + 2);
        assert!(h1 >= 0);
        if prev == Some(h1) && n > 2 * b.j() as i64 / k + 2 {
            return h1 as usize;
        }
        prev = Some(h1);
    }
    unreachable!()
}

/// `dim H^0(Z_k - l, E) / H^0(Z_k, E)`: the dimension of the negative
/// `u`-degree parts of sections with poles along the zero section.
fn width_oracle(b: &CanonicalBundle) -> usize {
    let (k, j) = (b.k() as i64, b.j() as i64);
    let rmin = -(2 * j) / k;
    let top = j / k + b.p().u_degree().unwrap_or(0) as i64 + 2;
    let sys = system(b, rmin, top);
    let all: Vec<usize> = (0..sys.vars.len()).collect();
    let nonneg: Vec<usize> = all.iter().copied().filter(|&c| sys.vars[c].1 >= 0).collect();
    nullity(&sys, &all) - nullity(&sys, &nonneg)
}

fn bundle(k: i64, j: i64, p: &str) -> CanonicalBundle {
    CanonicalBundle::parse(k, j, p).unwrap()
}

#[test]
fn oracle_reproduces_known_values() {
    assert_eq!(height_oracle(&bundle(3, 3, "z*u")), 2);
    assert_eq!(width_oracle(&bundle(3, 3, "z*u")), 0);
    assert_eq!(height_oracle(&CanonicalBundle::split(2, 4).unwrap()), 4);
    // pi_* O(-jE) on the blow-up of the plane is m^j, of colength j(j+1)/2
    assert_eq!(width_oracle(&CanonicalBundle::split(1, 2).unwrap()), 3);
}

#[test]
fn height_matches_oracle() {
    for k in 1..=3u32 {
        for j in 0..=2 * k + 1 {
            let mut bundles = sample_extension_classes(k, j, 3, 5);
            bundles.push(CanonicalBundle::split(k as i64, j as i64).unwrap());
            for b in bundles {
                assert_eq!(height_direct(&b), height_oracle(&b), "{b:?}");
            }
        }
    }
}

#[test]
fn width_matches_oracle() {
    let opts = ComputeOptions::default();
    for k in 1..=3u32 {
        for j in 0..=k + 1 {
            let mut bundles = sample_extension_classes(k, j, 2, 3);
            bundles.push(CanonicalBundle::split(k as i64, j as i64).unwrap());
            for b in bundles {
                assert_eq!(width(&b, &opts).unwrap(), width_oracle(&b), "{b:?}");
            }
        }
    }
}

#[test]
fn charge_is_width_plus_height() {
    let opts = ComputeOptions::default();
    for (k, j, p) in [(2, 3, "u + z*u"), (1, 2, "z*u"), (2, 4, "u^2*z"), (3, 4, "u")] {
        let b = bundle(k, j, p);
        let r = local_charge(&b, &opts).unwrap();
        assert_eq!(r.chi, width_oracle(&b) + height_oracle(&b), "{b:?}");
    }
}

#[test]
fn closed_form_is_only_a_lower_bound() {
    use localchi::invariants::height_closed_form;
    let b = bundle(2, 5, "z^-2*u");
    assert!(!b.p_is_holomorphic());
    assert_eq!(height_oracle(&b), 5);
    assert_eq!(height_closed_form(&b).unwrap(), 4);
    let holo = bundle(2, 5, "u");
    assert_eq!(height_oracle(&holo), height_closed_form(&holo).unwrap());
}
