//! Batch checks over exhaustive or sampled ensembles.
//!
//! Every routine takes a [`Parallelism`] mode; the checks themselves are
//! pure and independent per item.

use crate::crystal::CrystalParams;
use crate::error::Result;
use crate::evolution::{self, Capacity};
use crate::oracle::IsoOracle;
use crate::par::{self, Parallelism};
use crate::rmatrix;
use crate::state::State;
use crate::tableau::bump_tableau;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub checked: u64,
    pub violations: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn merge(parts: Vec<Result<(u64, Vec<String>)>>) -> Result<Self> {
        let mut checked = 0;
        let mut violations = Vec::new();
        for part in parts {
            let (c, v) = part?;
            checked += c;
            violations.extend(v);
        }
        Ok(SweepReport {
            checked,
            violations,
        })
    }
}

/// Compares the pairing algorithm with the graph-path oracle on all of
/// `B_l ⊗ B_{l'}`.
pub fn oracle_agreement(
    params: CrystalParams,
    l: usize,
    l2: usize,
    mode: Parallelism,
) -> Result<SweepReport> {
    let oracle = IsoOracle::build(params, l, l2)?;
    let entries = oracle.entries();
    let parts = par::map(mode, &entries, |(node, expected)| {
        let got = rmatrix::combinatorial_r(params, &node.0, &node.1)?;
        let bad = (got != **expected).then(|| {
            format!(
                "{:?} ⊗ {:?}: pairing gives {got}, oracle gives {expected}",
                node.0, node.1
            )
        });
        Ok((1, bad.into_iter().collect()))
    });
    SweepReport::merge(parts)
}

/// `E_l(T_{l'} p) = E_l(p)` and `T_l T_{l'} p = T_{l'} T_l p` for all
/// `l, l' <= max_l`, plus conservation of the letter content.
pub fn conservation(states: &[State], max_l: usize, mode: Parallelism) -> Result<SweepReport> {
    let parts = par::map(mode, states, |p| {
        let mut checked = 0;
        let mut bad = Vec::new();
        let energies: Vec<u64> = (1..=max_l)
            .map(|l| evolution::energy(p, l))
            .collect::<Result<_>>()?;
        let evolved: Vec<State> = (1..=max_l)
            .map(|l| evolution::step(p, Capacity::Finite(l)))
            .collect::<Result<_>>()?;
        let mut content = p.reading_word();
        content.sort_unstable();
        for (j, q) in evolved.iter().enumerate() {
            let l2 = j + 1;
            for l in 1..=max_l {
                checked += 1;
                let e = evolution::energy(q, l)?;
                if e != energies[l - 1] {
                    bad.push(format!(
                        "E_{l}(T_{l2} {p}) = {e} but E_{l}(p) = {}",
                        energies[l - 1]
                    ));
                }
            }
            let mut after = q.reading_word();
            after.sort_unstable();
            checked += 1;
            if after != content {
                bad.push(format!("T_{l2} changed the letter content of {p}"));
            }
            for l in l2 + 1..=max_l {
                checked += 1;
                let a = evolution::step(q, Capacity::Finite(l))?;
                let b = evolution::step(&evolved[l - 1], Capacity::Finite(l2))?;
                if a != b {
                    bad.push(format!("T_{l} T_{l2} != T_{l2} T_{l} on {p}"));
                }
            }
        }
        Ok((checked, bad))
    });
    SweepReport::merge(parts)
}

/// The bumping tableau is constant along `steps` applications of each
/// evolution in `capacities`.
pub fn tableau_invariance(
    states: &[State],
    capacities: &[Capacity],
    steps: u64,
    mode: Parallelism,
) -> Result<SweepReport> {
    let parts = par::map(mode, states, |p| {
        let reference = bump_tableau(p);
        let mut checked = 0;
        let mut bad = Vec::new();
        for &cap in capacities {
            let mut s = p.clone();
            for t in 1..=steps {
                s = evolution::step(&s, cap)?;
                checked += 1;
                let tab = bump_tableau(&s);
                if tab != reference {
                    bad.push(format!(
                        "tableau of {p} changes under T_{cap} at t={t}: {reference} -> {tab}"
                    ));
                }
            }
        }
        Ok((checked, bad))
    });
    SweepReport::merge(parts)
}

/// `T_l^{-1} T_l p = p` and `T_l T_l^{-1} p = p` for every listed capacity.
pub fn invertibility(
    states: &[State],
    capacities: &[Capacity],
    mode: Parallelism,
) -> Result<SweepReport> {
    let parts = par::map(mode, states, |p| {
        let mut bad = Vec::new();
        for &cap in capacities {
            let fwd = evolution::step(p, cap)?;
            if evolution::step_inverse(&fwd, cap)? != *p {
                bad.push(format!("T_{cap}^-1 T_{cap} {p} != {p}"));
            }
            let bwd = evolution::step_inverse(p, cap)?;
            if evolution::step(&bwd, cap)? != *p {
                bad.push(format!("T_{cap} T_{cap}^-1 {p} != {p}"));
            }
        }
        Ok((2 * capacities.len() as u64, bad))
    });
    SweepReport::merge(parts)
}
