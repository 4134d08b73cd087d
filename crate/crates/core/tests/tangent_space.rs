//! Tangent weights at monomial ideals against a brute-force computation of
//! the weight spaces of Hom(I, R/I).

use std::collections::BTreeSet;

use ellgen_core::localization::{partitions, tangent_weights, Partition};

type Mono = (i32, i32);

/// Monomials `x^a y^b` outside the ideal: cell `(row, col)` is `x^row y^col`.
fn standard_monomials(p: &Partition) -> BTreeSet<Mono> {
    p.cells().map(|(r, c)| (r as i32, c as i32)).collect()
}

fn generators(p: &Partition) -> Vec<Mono> {
    let std = standard_monomials(p);
    let mut gens = Vec::new();
    for a in 0..=p.size() as i32 {
        for b in 0..=p.size() as i32 {
            let m = (a, b);
            let in_ideal = !std.contains(&m);
            let minimal = (a == 0 || std.contains(&(a - 1, b))) && (b == 0 || std.contains(&(a, b - 1)));
            if in_ideal && minimal {
                gens.push(m);
            }
        }
    }
    gens
}

fn find(parent: &mut [usize], i: usize) -> usize {
    if parent[i] != i {
        let r = find(parent, parent[i]);
        parent[i] = r;
    }
    parent[i]
}

/// Dimension of the degree-`w` part of Hom(I, R/I): `φ(g) = c_g·g·x^w`,
/// with `c_g = 0` unless `g·x^w` is a standard monomial, subject to the
/// pairwise syzygies.
fn hom_dimension(p: &Partition, w: Mono) -> usize {
    let std = standard_monomials(p);
    let gens = generators(p);
    let n = gens.len();
    let valid: Vec<bool> = gens.iter().map(|g| std.contains(&(g.0 + w.0, g.1 + w.1))).collect();
    // component n is the forced-zero class
    let mut parent: Vec<usize> = (0..=n).collect();
    for i in (0..n).filter(|&i| !valid[i]) {
        let r = find(&mut parent, i);
        parent[r] = n;
    }
    for i in 0..n {
        for j in i + 1..n {
            let l = (gens[i].0.max(gens[j].0) + w.0, gens[i].1.max(gens[j].1) + w.1);
            // the syzygy only constrains when lcm·x^w survives in R/I
            if std.contains(&l) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    let (lo, hi) = if a == n { (b, a) } else { (a, b) };
                    parent[lo] = hi;
                }
            }
        }
    }
    let roots: BTreeSet<usize> = (0..n).map(|i| find(&mut parent, i)).filter(|&r| r != n).collect();
    roots.len()
}

fn hom_weights(p: &Partition) -> Vec<Mono> {
    let r = p.size() as i32 + 1;
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            for _ in 0..hom_dimension(p, (a, b)) {
                // coordinate functions carry the opposite weight
                out.push((-a, -b));
            }
        }
    }
    out.sort_unstable();
    out
}

#[test]
fn hom_oracle_matches_arm_leg_weights() {
    for n in 1..=4 {
        for p in partitions(n) {
            let hom = hom_weights(&p);
            assert_eq!(hom.len(), 2 * n as usize, "dimension at {p}");
            assert_eq!(hom, tangent_weights(&p).sorted(), "weights at {p}");
        }
    }
}

#[test]
fn generators_of_small_ideals() {
    assert_eq!(generators(&Partition::new(vec![1])), vec![(0, 1), (1, 0)]);
    assert_eq!(generators(&Partition::new(vec![3])), vec![(0, 3), (1, 0)]);
}
