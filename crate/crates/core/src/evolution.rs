//! Carrier time evolutions `T_l`, their inverses and the energies `E_l`.
//!
//! `T_l` threads a carrier in `B_l`, initially `(n^l)`, through the state
//! from left to right with the isomorphism `B_l ⊗ B ≅ B ⊗ B_l`. Vacuum
//! cells are appended on the right until the carrier is `(n^l)` again.

use std::fmt;
use std::str::FromStr;

use crate::crystal::{Element, Letter};
use crate::error::{Error, Result};
use crate::rmatrix::{iso_row1_in_place, iso_row1_inverse_in_place};
use crate::state::State;

/// Carrier capacity: a finite `l` for `T_l`, or `Infinite` for `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Capacity {
    Finite(usize),
    Infinite,
}

impl Capacity {
    /// Speed of an isolated soliton of the given length.
    pub fn velocity(self, length: usize) -> usize {
        match self {
            Capacity::Finite(k) => k.min(length),
            Capacity::Infinite => length,
        }
    }

    pub fn exceeds(self, length: usize) -> bool {
        match self {
            Capacity::Finite(k) => k > length,
            Capacity::Infinite => true,
        }
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capacity::Finite(l) => write!(f, "{l}"),
            Capacity::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Capacity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Capacity::Infinite),
            t => match t.parse::<usize>() {
                Ok(l) if l >= 1 => Ok(Capacity::Finite(l)),
                _ => Err(Error::parse(
                    1,
                    1,
                    format!("capacity must be a positive integer or 'inf', got {t:?}"),
                )),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarrierTrace {
    pub out: State,
    /// Local energies `H_j`, one per processed cell (padding included).
    pub h_values: Vec<i32>,
    pub final_carrier: Element,
}

impl CarrierTrace {
    /// `E_l = -sum H_j`.
    pub fn energy(&self) -> u64 {
        self.h_values.iter().map(|&h| (-h) as u64).sum()
    }
}

#[inline]
fn is_empty_carrier(carrier: &[Letter], vacuum: Letter) -> bool {
    carrier[0] == vacuum
}

fn padding_cap(p: &State, l: usize) -> usize {
    p.width() + l * p.nonvacuum_count().max(1)
}

/// One left-to-right sweep of a capacity-`l` carrier.
pub fn carrier_pass(p: &State, l: usize) -> Result<CarrierTrace> {
    if l == 0 {
        return Err(Error::Precondition(
            "carrier capacity must be at least 1".into(),
        ));
    }
    let params = p.params();
    let vacuum = params.vacuum();
    let mut carrier = vec![vacuum; l];
    let mut out = Vec::with_capacity(p.width() + l);
    let mut h_values = Vec::with_capacity(p.width() + l);
    for &c in p.cells() {
        let (o, h) = iso_row1_in_place(&mut carrier, c);
        out.push(o);
        h_values.push(h);
    }
    let cap = padding_cap(p, l);
    let mut padded = 0;
    while !is_empty_carrier(&carrier, vacuum) {
        if padded >= cap {
            return Err(Error::Internal(format!(
                "carrier did not return to vacuum after {padded} padding cells"
            )));
        }
        let (o, h) = iso_row1_in_place(&mut carrier, vacuum);
        out.push(o);
        h_values.push(h);
        padded += 1;
    }
    while out.len() > p.width() && out.last() == Some(&vacuum) {
        out.pop();
    }
    Ok(CarrierTrace {
        out: State::from_raw(params, out, p.origin()),
        h_values,
        final_carrier: Element::from_sorted(carrier),
    })
}

/// One right-to-left sweep undoing [`carrier_pass`] with capacity `l`.
pub fn inverse_pass(p: &State, l: usize) -> Result<State> {
    if l == 0 {
        return Err(Error::Precondition(
            "carrier capacity must be at least 1".into(),
        ));
    }
    let params = p.params();
    let vacuum = params.vacuum();
    let mut carrier = vec![vacuum; l];
    let mut out = Vec::with_capacity(p.width() + l);
    for &c in p.cells().iter().rev() {
        out.push(iso_row1_inverse_in_place(c, &mut carrier));
    }
    let cap = padding_cap(p, l);
    let mut padded = 0usize;
    while !is_empty_carrier(&carrier, vacuum) {
        if padded >= cap {
            return Err(Error::Internal(format!(
                "inverse carrier did not return to vacuum after {padded} padding cells"
            )));
        }
        out.push(iso_row1_inverse_in_place(vacuum, &mut carrier));
        padded += 1;
    }
    out.reverse();
    let mut origin = p.origin() - padded as i64;
    let mut start = 0;
    while origin < p.origin() && start < out.len() && out[start] == vacuum {
        start += 1;
        origin += 1;
    }
    out.drain(..start);
    Ok(State::from_raw(params, out, origin))
}

/// Smallest capacity from the non-vacuum count upwards at which `T_l`
/// agrees with `T_{l+1}` on `p`, with the resulting state.
fn stable_capacity(
    p: &State,
    pass: impl Fn(&State, usize) -> Result<State>,
) -> Result<(usize, State)> {
    let start = p.nonvacuum_count().max(1);
    let mut cap = start;
    let mut current = pass(p, cap)?;
    loop {
        let next = pass(p, cap + 1)?;
        if next == current {
            return Ok((cap, current));
        }
        if cap > start + p.width() + 1 {
            return Err(Error::Internal("T_l did not stabilize in l".into()));
        }
        cap += 1;
        current = next;
    }
}

/// The capacity used to realize `T` on `p`.
pub fn effective_capacity(p: &State) -> Result<usize> {
    stable_capacity(p, |s, l| carrier_pass(s, l).map(|t| t.out)).map(|(c, _)| c)
}

pub fn step(p: &State, capacity: Capacity) -> Result<State> {
    match capacity {
        Capacity::Finite(l) => Ok(carrier_pass(p, l)?.out),
        Capacity::Infinite => {
            stable_capacity(p, |s, l| carrier_pass(s, l).map(|t| t.out)).map(|(_, s)| s)
        }
    }
}

/// One step together with the local energies of the pass that produced it.
pub fn step_traced(p: &State, capacity: Capacity) -> Result<CarrierTrace> {
    let l = match capacity {
        Capacity::Finite(l) => l,
        Capacity::Infinite => effective_capacity(p)?,
    };
    carrier_pass(p, l)
}

pub fn step_inverse(p: &State, capacity: Capacity) -> Result<State> {
    match capacity {
        Capacity::Finite(l) => inverse_pass(p, l),
        Capacity::Infinite => stable_capacity(p, inverse_pass).map(|(_, s)| s),
    }
}

pub fn evolve(p: &State, capacity: Capacity, steps: u64) -> Result<State> {
    let mut s = p.clone();
    for _ in 0..steps {
        s = step(&s, capacity)?;
    }
    Ok(s)
}

pub fn evolve_inverse(p: &State, capacity: Capacity, steps: u64) -> Result<State> {
    let mut s = p.clone();
    for _ in 0..steps {
        s = step_inverse(&s, capacity)?;
    }
    Ok(s)
}

/// `p, T p, ..., T^steps p`.
pub fn trajectory(p: &State, capacity: Capacity, steps: u64) -> Result<Vec<State>> {
    let mut rows = Vec::with_capacity(steps as usize + 1);
    rows.push(p.clone());
    for _ in 0..steps {
        let next = step(rows.last().unwrap(), capacity)?;
        rows.push(next);
    }
    Ok(rows)
}

/// `E_l(p)`.
pub fn energy(p: &State, l: usize) -> Result<u64> {
    carrier_pass(p, l).map(|t| t.energy())
}

/// `E_l` for `l = 0..=top+1` and the second differences `N_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergySpectrum {
    e_values: Vec<u64>,
}

impl EnergySpectrum {
    /// Largest `l` for which `N_l` is tabulated.
    pub fn top(&self) -> usize {
        self.e_values.len() - 2
    }

    pub fn e(&self, l: usize) -> u64 {
        *self
            .e_values
            .get(l)
            .unwrap_or_else(|| self.e_values.last().unwrap())
    }

    /// `N_l = -E_{l-1} + 2 E_l - E_{l+1}`.
    pub fn n(&self, l: usize) -> i64 {
        assert!(l >= 1, "N_l is defined for l >= 1");
        -(self.e(l - 1) as i64) + 2 * self.e(l) as i64 - self.e(l + 1) as i64
    }

    /// The first `l >= 1` with `E_l = E_{l-1}`.
    pub fn stabilization_point(&self) -> usize {
        (1..self.e_values.len())
            .find(|&l| self.e_values[l] == self.e_values[l - 1])
            .unwrap_or(self.e_values.len() - 1)
    }

    /// `(l, E_l, N_l)` for `l = 1..=lmax`.
    pub fn rows(&self, lmax: usize) -> Vec<(usize, u64, i64)> {
        (1..=lmax).map(|l| (l, self.e(l), self.n(l))).collect()
    }

    /// Soliton-length census `N_l` as `(l, N_l)` for the nonzero entries.
    pub fn census(&self) -> Vec<(usize, i64)> {
        (1..=self.top())
            .map(|l| (l, self.n(l)))
            .filter(|&(_, c)| c != 0)
            .collect()
    }
}

/// Computes `E_l` far enough that it has provably stopped growing: a
/// carrier larger than the number of non-vacuum letters never fills up.
pub fn spectrum(p: &State, l_max: usize) -> Result<EnergySpectrum> {
    let top = l_max.max(p.nonvacuum_count() + 1);
    let mut e_values = vec![0];
    for l in 1..=top + 1 {
        e_values.push(energy(p, l)?);
    }
    Ok(EnergySpectrum { e_values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::CrystalParams;

    fn p(n: u32) -> CrystalParams {
        CrystalParams::new(n).unwrap()
    }

    fn st(n: u32, s: &str) -> State {
        State::parse(p(n), s).unwrap()
    }

    #[test]
    fn single_soliton_shifts() {
        let s = st(4, "....332.............");
        let t = carrier_pass(&s, 3).unwrap();
        assert_eq!(t.out.render(), ".......332..........");
        assert_eq!(t.final_carrier, p(4).vacuum_element(3));
        assert_eq!(t.energy(), 3);
        assert_eq!(t.h_values.len(), 20);
        let minus_h: Vec<i32> = t.h_values.iter().map(|h| -h).collect();
        assert_eq!(&minus_h[..10], &[0, 0, 0, 0, 0, 0, 0, 1, 1, 1]);
        assert_eq!(step(&s, Capacity::Finite(1)).unwrap(), st(4, ".....332"));
    }

    #[test]
    fn vacuum_is_fixed() {
        let s = st(3, "......");
        let t = carrier_pass(&s, 2).unwrap();
        assert_eq!(t.out.render(), "......");
        assert!(t.h_values.iter().all(|&h| h == 0));
        assert_eq!(
            step_inverse(&s, Capacity::Finite(2)).unwrap().render(),
            "......"
        );
        let sp = spectrum(&s, 3).unwrap();
        assert_eq!(sp.rows(3), vec![(1, 0, 0), (2, 0, 0), (3, 0, 0)]);
        assert_eq!(sp.stabilization_point(), 1);
    }

    #[test]
    fn padding_extends_the_window() {
        let s = st(3, "21");
        let t = carrier_pass(&s, 2).unwrap();
        assert_eq!(t.out.render(), "..21");
        assert_eq!(t.h_values.len(), 4);
    }

    #[test]
    fn inverse_round_trips() {
        let s = st(4, ".......332..........");
        let back = step_inverse(&s, Capacity::Finite(3)).unwrap();
        assert_eq!(back, st(4, "....332"));
        let s = st(4, "332...11...2");
        for cap in [Capacity::Finite(1), Capacity::Finite(2), Capacity::Infinite] {
            let fwd = step(&s, cap).unwrap();
            assert_eq!(step_inverse(&fwd, cap).unwrap(), s);
            let bwd = step_inverse(&s, cap).unwrap();
            assert_eq!(step(&bwd, cap).unwrap(), s);
        }
        // Going backwards moves cells left of the origin.
        let bwd = evolve_inverse(&s, Capacity::Infinite, 2).unwrap();
        assert_eq!(bwd.support().unwrap().0, -6);
    }

    #[test]
    fn capacity_parsing() {
        assert_eq!("inf".parse::<Capacity>().unwrap(), Capacity::Infinite);
        assert_eq!("3".parse::<Capacity>().unwrap(), Capacity::Finite(3));
        assert!("0".parse::<Capacity>().is_err());
        assert!(carrier_pass(&st(3, "1"), 0).is_err());
        assert_eq!(Capacity::Finite(2).velocity(5), 2);
        assert_eq!(Capacity::Infinite.velocity(5), 5);
    }

    #[test]
    fn spectrum_of_scattering_state() {
        let sp = spectrum(&st(4, "332...11...2"), 4).unwrap();
        assert_eq!(sp.rows(4), vec![(1, 3, 1), (2, 5, 1), (3, 6, 1), (4, 6, 0)]);
        assert_eq!(sp.stabilization_point(), 4);
        assert_eq!(sp.census(), vec![(1, 1), (2, 1), (3, 1)]);
    }
}
