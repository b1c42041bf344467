//! Solitons, their affine labels and scattering.
//!
//! A soliton of length `l` is a maximal weakly decreasing run
//! `nu_1 >= ... >= nu_l` of non-vacuum letters. Observed at time `t` with
//! `nu_1` at absolute position `x`, under an evolution where it moves with
//! speed `v`, it is labelled by `z^{-(x - v t)} (nu_l, ..., nu_1)` in the
//! affinization of `B_l` over the reduced alphabet `{1, ..., n-1}`.
//!
//! Two solitons of lengths `l_1 > l_2` scatter by the combinatorial R-matrix
//! with an extra phase: the exponents move by `±(2 l_2 + H(b_1 ⊗ b_2))`.
//! Several solitons scatter by composing two-body scatterings.

use std::fmt;

use crate::crystal::{CrystalParams, Element, Letter};
use crate::error::{Error, Result};
use crate::evolution::{self, Capacity};
use crate::rmatrix::{r_raw, AffineElement};
use crate::state::State;
use crate::tableau::{bump_tableau, Tableau};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Soliton {
    /// Letters as they appear in the state, weakly decreasing.
    pub content: Vec<Letter>,
    /// Absolute cell of the first letter.
    pub position: i64,
    pub time: i64,
}

impl Soliton {
    pub fn length(&self) -> usize {
        self.content.len()
    }
}

/// `z^{exponent} element`, with `exponent = -phase`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SolitonLabel {
    pub exponent: i64,
    pub element: Element,
}

impl SolitonLabel {
    pub fn new(exponent: i64, element: Element) -> Self {
        SolitonLabel { exponent, element }
    }

    pub fn length(&self) -> usize {
        self.element.len()
    }

    /// The phase `gamma` in `position = velocity * t + gamma`.
    pub fn phase(&self) -> i64 {
        -self.exponent
    }

    pub fn to_affine(&self) -> AffineElement {
        AffineElement::new(self.exponent, self.element.clone())
    }
}

impl From<AffineElement> for SolitonLabel {
    fn from(a: AffineElement) -> Self {
        SolitonLabel::new(a.d, a.b)
    }
}

impl fmt::Display for SolitonLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^{{{}}}({})", self.exponent, self.element)
    }
}

impl fmt::Debug for SolitonLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn format_labels(labels: &[SolitonLabel]) -> String {
    labels
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Splits `p` into solitons, or fails if `p` is not a separated soliton
/// state: every maximal run must be weakly decreasing and the run lengths
/// must reproduce the census `N_l` of the conserved energies.
pub fn detect(p: &State, time: i64) -> Result<Vec<Soliton>> {
    let vacuum = p.params().vacuum();
    let cells = p.cells();
    let mut solitons = Vec::new();
    let mut k = 0;
    while k < cells.len() {
        if cells[k] == vacuum {
            k += 1;
            continue;
        }
        let start = k;
        while k < cells.len() && cells[k] != vacuum {
            k += 1;
        }
        let run = &cells[start..k];
        let position = p.origin() + start as i64;
        if run.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotSeparated(format!(
                "run at cells {}..={} is not weakly decreasing",
                position,
                position + run.len() as i64 - 1
            )));
        }
        solitons.push(Soliton {
            content: run.to_vec(),
            position,
            time,
        });
    }
    let mut runs: Vec<(usize, i64)> = Vec::new();
    for s in &solitons {
        match runs.iter_mut().find(|(l, _)| *l == s.length()) {
            Some(entry) => entry.1 += 1,
            None => runs.push((s.length(), 1)),
        }
    }
    runs.sort_unstable();
    let census = evolution::spectrum(p, 0)?.census();
    if runs != census {
        return Err(Error::NotSeparated(format!(
            "run lengths {runs:?} disagree with the conserved census {census:?}"
        )));
    }
    Ok(solitons)
}

/// The affine label of a soliton observed under the given evolution.
pub fn label(s: &Soliton, capacity: Capacity) -> SolitonLabel {
    let velocity = capacity.velocity(s.length()) as i64;
    let phase = s.position - velocity * s.time;
    let mut letters = s.content.clone();
    letters.reverse();
    SolitonLabel::new(-phase, Element::from_sorted(letters))
}

pub fn labels(solitons: &[Soliton], capacity: Capacity) -> Vec<SolitonLabel> {
    solitons.iter().map(|s| label(s, capacity)).collect()
}

fn check_label(params: CrystalParams, x: &SolitonLabel) -> Result<()> {
    if x.element.last() >= params.vacuum() {
        return Err(Error::Precondition(format!(
            "soliton label {x} uses the vacuum letter {}",
            params.vacuum()
        )));
    }
    Ok(())
}

/// Two-body scattering `z^{c1} b1 ⊗ z^{c2} b2 -> z^{c2+δ} b̃2 ⊗ z^{c1-δ} b̃1`
/// with `δ = 2 l2 + H(b1 ⊗ b2)` over the alphabet `{1, ..., n-1}`.
pub fn predict_two_body(
    params: CrystalParams,
    a: &SolitonLabel,
    b: &SolitonLabel,
) -> Result<(SolitonLabel, SolitonLabel)> {
    check_label(params, a)?;
    check_label(params, b)?;
    if a.length() <= b.length() {
        return Err(Error::Precondition(format!(
            "two-body scattering needs l1 > l2, got l1 = {} and l2 = {}",
            a.length(),
            b.length()
        )));
    }
    let (delta, img) = scattering_shift(params, a, b);
    Ok((
        SolitonLabel::new(b.exponent + delta, img.left),
        SolitonLabel::new(a.exponent - delta, img.right),
    ))
}

fn scattering_shift(
    params: CrystalParams,
    a: &SolitonLabel,
    b: &SolitonLabel,
) -> (i64, crate::rmatrix::IsoImage) {
    let img = r_raw(&a.element, &b.element, params.reduced().n());
    (2 * b.length() as i64 + img.h as i64, img)
}

/// The phase shift `δ` of a two-body scattering.
pub fn phase_shift(params: CrystalParams, a: &SolitonLabel, b: &SolitonLabel) -> Result<i64> {
    predict_two_body(params, a, b)?;
    Ok(scattering_shift(params, a, b).0)
}

/// The adjacent transpositions of bubble sort for `m` items, a reduced
/// word for the order-reversing permutation.
pub fn bubble_word(m: usize) -> Vec<usize> {
    let mut word = Vec::new();
    for pass in 0..m.saturating_sub(1) {
        for j in 0..m - 1 - pass {
            word.push(j);
        }
    }
    word
}

/// Factorized scattering of solitons with strictly decreasing lengths.
pub fn predict_m_body(params: CrystalParams, labels: &[SolitonLabel]) -> Result<Vec<SolitonLabel>> {
    predict_m_body_with_word(params, labels, &bubble_word(labels.len()))
}

/// As [`predict_m_body`], applying two-body scatterings at the given
/// adjacent positions in order. Each step must act on a (longer, shorter)
/// pair and the word must fully reverse the order.
pub fn predict_m_body_with_word(
    params: CrystalParams,
    labels: &[SolitonLabel],
    word: &[usize],
) -> Result<Vec<SolitonLabel>> {
    for w in labels.windows(2) {
        if w[0].length() == w[1].length() {
            return Err(Error::Precondition(format!(
                "equal-length solitons ({} and {}) are not supported",
                w[0], w[1]
            )));
        }
        if w[0].length() < w[1].length() {
            return Err(Error::Precondition(
                "soliton lengths must be strictly decreasing from left to right".into(),
            ));
        }
    }
    let mut current = labels.to_vec();
    for &j in word {
        if j + 1 >= current.len() {
            return Err(Error::Precondition(format!(
                "transposition {j} out of range"
            )));
        }
        let (x, y) = predict_two_body(params, &current[j], &current[j + 1])?;
        current[j] = x;
        current[j + 1] = y;
    }
    if current.windows(2).any(|w| w[0].length() >= w[1].length()) {
        return Err(Error::Precondition(
            "transposition word does not reverse the solitons".into(),
        ));
    }
    Ok(current)
}

/// Places solitons at time 0: label `z^c b` occupies cells from `-c`
/// onwards with the letters of `b` reversed.
pub fn state_from_labels(params: CrystalParams, labels: &[SolitonLabel]) -> Result<State> {
    if labels.is_empty() {
        return Ok(State::vacuum(params, 0));
    }
    for x in labels {
        check_label(params, x)?;
    }
    let start = labels.iter().map(|x| x.phase()).min().unwrap();
    let end = labels
        .iter()
        .map(|x| x.phase() + x.length() as i64)
        .max()
        .unwrap();
    let mut cells = vec![params.vacuum(); (end - start) as usize];
    let mut occupied = vec![false; cells.len()];
    for x in labels {
        let base = (x.phase() - start) as usize;
        let lo = base.saturating_sub(1);
        let hi = (base + x.length() + 1).min(cells.len());
        if occupied[lo..hi].iter().any(|&o| o) {
            return Err(Error::Precondition(format!(
                "soliton {x} touches another soliton"
            )));
        }
        for (k, &letter) in x.element.letters().iter().rev().enumerate() {
            cells[base + k] = letter;
            occupied[base + k] = true;
        }
    }
    State::new(params, cells, start)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScatteringReport {
    pub in_labels: Vec<SolitonLabel>,
    pub out_simulated: Vec<SolitonLabel>,
    pub out_predicted: Vec<SolitonLabel>,
    pub matched: bool,
    pub tableau_in: Tableau,
    pub tableau_out: Tableau,
    /// First time from which the outgoing labels were observed unchanged.
    pub settle_time: i64,
}

/// Consecutive observations with identical labels that certify a free
/// asymptotic configuration.
const STATIONARY_OBSERVATIONS: usize = 3;

fn strictly_increasing(labels: &[SolitonLabel]) -> bool {
    labels.windows(2).all(|w| w[0].length() < w[1].length())
}

/// Evolves a separated state with strictly decreasing soliton lengths until
/// the solitons emerge in reversed order with stationary labels, and
/// compares the result with [`predict_m_body`].
pub fn run_scattering(p: &State, capacity: Capacity, max_steps: u64) -> Result<ScatteringReport> {
    let params = p.params();
    let solitons = detect(p, 0)?;
    let in_labels = labels(&solitons, capacity);
    if in_labels.windows(2).any(|w| w[0].length() <= w[1].length()) {
        return Err(Error::Precondition(
            "incoming soliton lengths must be strictly decreasing from left to right".into(),
        ));
    }
    if let Some(second) = in_labels.get(1) {
        if !capacity.exceeds(second.length()) {
            return Err(Error::Precondition(format!(
                "evolution T_{capacity} must have capacity above the second-longest length {}",
                second.length()
            )));
        }
    }
    // Incoming solitons must already move freely: undo two steps.
    let mut back = p.clone();
    for k in 1..STATIONARY_OBSERVATIONS as i64 {
        back = evolution::step_inverse(&back, capacity)?;
        let earlier = detect(&back, -k).map(|s| labels(&s, capacity));
        if earlier.as_deref() != Ok(&in_labels[..]) {
            return Err(Error::NotSeparated(
                "incoming solitons are still interacting (labels change under inverse evolution)"
                    .into(),
            ));
        }
    }
    let out_predicted = predict_m_body(params, &in_labels)?;

    let mut state = p.clone();
    let mut streak: Option<(Vec<SolitonLabel>, usize)> = None;
    let mut last_snapshot = String::from("none");
    let mut t: i64 = 0;
    loop {
        let observed = detect(&state, t).ok().map(|s| labels(&s, capacity));
        if let Some(obs) = &observed {
            last_snapshot = format!("t={t}: {}", format_labels(obs));
        }
        streak = match (observed, streak) {
            (Some(obs), Some((prev, count))) if obs == prev => Some((prev, count + 1)),
            (Some(obs), _) if strictly_increasing(&obs) => Some((obs, 1)),
            _ => None,
        };
        if let Some((out, count)) = &streak {
            if *count >= STATIONARY_OBSERVATIONS {
                let settle_time = t + 1 - STATIONARY_OBSERVATIONS as i64;
                let out_simulated = out.clone();
                return Ok(ScatteringReport {
                    matched: out_simulated == out_predicted,
                    in_labels,
                    out_simulated,
                    out_predicted,
                    tableau_in: bump_tableau(p),
                    tableau_out: bump_tableau(&state),
                    settle_time,
                });
            }
        }
        if t as u64 >= max_steps {
            return Err(Error::StepBudget {
                max_steps,
                last: last_snapshot,
            });
        }
        state = evolution::step(&state, capacity)?;
        t += 1;
    }
}
