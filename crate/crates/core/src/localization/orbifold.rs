//! Commuting pairs in S_n and the characters of their orbit actions.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Rational;

pub const DEFAULT_PAIR_BOUND: u32 = 5;

pub type Perm = Vec<u8>;

fn compose(a: &[u8], b: &[u8]) -> Perm {
    b.iter().map(|&i| a[i as usize]).collect()
}

fn power(g: &[u8], k: usize) -> Perm {
    let mut r: Perm = (0..g.len() as u8).collect();
    for _ in 0..k {
        r = compose(g, &r);
    }
    r
}

/// One orbit of ⟨g, h⟩ with the characters `(λ(g), λ(h)) ∈ (Q/Z)²` of its
/// (regular, abelian) permutation action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCharacters {
    pub orbit: Vec<u8>,
    pub characters: Vec<(Rational, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCharacterData {
    pub g: Perm,
    pub h: Perm,
    pub orbits: Vec<OrbitCharacters>,
}

impl OrbitCharacterData {
    /// All characters over all orbits, sorted; identifies the contribution.
    pub fn character_multiset(&self) -> Vec<(Rational, Rational)> {
        let mut all: Vec<_> = self
            .orbits
            .iter()
            .flat_map(|o| o.characters.iter().cloned())
            .collect();
        all.sort();
        all
    }
}

fn orbits(g: &[u8], h: &[u8]) -> Vec<Vec<u8>> {
    let n = g.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut orb = vec![s as u8];
        seen[s] = true;
        let mut i = 0;
        while i < orb.len() {
            let x = orb[i] as usize;
            for m in [g, h] {
                let y = m[x] as usize;
                if !seen[y] {
                    seen[y] = true;
                    orb.push(y as u8);
                }
            }
            i += 1;
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}

fn orbit_characters(g: &[u8], h: &[u8], orbit: &[u8]) -> Result<Vec<(Rational, Rational)>> {
    let size = orbit.len();
    let o = orbit[0] as usize;
    // stabilizer of o in Z², up to N·Z², which it contains
    let gp: Vec<Perm> = (0..=size).map(|a| power(g, a)).collect();
    let hp: Vec<Perm> = (0..=size).map(|b| power(h, b)).collect();
    let lattice: Vec<(usize, usize)> = (0..=size)
        .cartesian_product(0..=size)
        .filter(|&(a, b)| compose(&gp[a], &hp[b])[o] as usize == o)
        .collect();
    let chars: Vec<(Rational, Rational)> = (0..size)
        .cartesian_product(0..size)
        .filter(|&(i, j)| lattice.iter().all(|&(a, b)| (a * i + b * j) % size == 0))
        .map(|(i, j)| (Rational::new(i as i64, size as i64), Rational::new(j as i64, size as i64)))
        .collect();
    if chars.len() != size {
        return Err(Error::Invariant(format!(
            "orbit of size {size} produced {} characters",
            chars.len()
        )));
    }
    Ok(chars)
}

/// Every ordered commuting pair `(g, h)` in S_n with its orbit data.
pub fn commuting_pairs(n: u32, bound: u32) -> Result<Vec<OrbitCharacterData>> {
    if n > bound {
        return Err(Error::SizeCap {
            what: "symmetric group degree",
            value: n as u64,
            bound: bound as u64,
        });
    }
    let perms: Vec<Perm> = (0..n as u8).permutations(n as usize).collect();
    let mut out = Vec::new();
    for g in &perms {
        for h in &perms {
            if compose(g, h) != compose(h, g) {
                continue;
            }
            let orbits = orbits(g, h)
                .into_iter()
                .map(|orbit| {
                    let characters = orbit_characters(g, h, &orbit)?;
                    Ok(OrbitCharacters { orbit, characters })
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(OrbitCharacterData {
                g: g.clone(),
                h: h.clone(),
                orbits,
            });
        }
    }
    Ok(out)
}

/// Σ over conjugacy classes of |class|·|centralizer|, i.e. n!·p(n).
pub fn expected_pair_count(n: u32) -> u64 {
    let fact: u64 = (1..=n as u64).product();
    fact * super::partition::partition_count(n)
}
