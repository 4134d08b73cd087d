use serde::{Deserialize, Serialize};

/// Integer partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn transpose(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (0..width)
                .map(|j| self.parts.iter().filter(|&&p| p > j).count() as u32)
                .collect(),
        }
    }

    /// Cells `(row, column)` in reading order.
    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i as u32, j)))
    }

    /// Arm (cells to the right) and leg (cells below) of a cell.
    pub fn arm_leg(&self, row: u32, col: u32) -> (u32, u32) {
        let arm = self.parts[row as usize] - col - 1;
        let leg = self.parts.iter().filter(|&&p| p > col).count() as u32 - row - 1;
        (arm, leg)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of partitions of `n`.
pub fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for k in 1..=n {
        for m in k..=n {
            p[m] += p[m - k];
        }
    }
    p[n]
}

/// Torus weights of the tangent space at the fixed point of a partition:
/// two per cell, `(l+1, -a)` and `(-l, a+1)` for arm `a` and leg `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentWeightSet {
    pub weights: Vec<(i32, i32)>,
}

impl TangentWeightSet {
    pub fn sorted(&self) -> Vec<(i32, i32)> {
        let mut w = self.weights.clone();
        w.sort_unstable();
        w
    }
}

pub fn tangent_weights(lambda: &Partition) -> TangentWeightSet {
    let mut weights = Vec::with_capacity(2 * lambda.size() as usize);
    for (i, j) in lambda.cells() {
        let (a, l) = lambda.arm_leg(i, j);
        let (a, l) = (a as i32, l as i32);
        weights.push((l + 1, -a));
        weights.push((-l, a + 1));
    }
    TangentWeightSet { weights }
}
