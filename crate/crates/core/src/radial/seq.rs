use num_complex::Complex64;
use serde::Serialize;

/// Where a radial sequence came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedFormPlus,
    ClosedFormMinus,
    EtaZero,
    EtaOne,
    BoundStateI,
    BoundStateII,
    Recurrence,
    Potential,
    Supplied,
}

/// Radial function as values `R_j(n)` on Fock levels `n = 0..=n_max`.
///
/// `n` is the argument of the normal-ordered radial factor, i.e. the level
/// between the annihilators and creators of `Psi_jm`; on the outer level
/// `n + j` the wave operator carries `R_j(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSeq {
    pub j: u32,
    pub values: Vec<Complex64>,
    pub provenance: Provenance,
}

impl RadialSeq {
    pub fn new(j: u32, values: Vec<Complex64>, provenance: Provenance) -> Self {
        RadialSeq { j, values, provenance }
    }

    pub fn from_real(j: u32, values: impl IntoIterator<Item = f64>) -> Self {
        RadialSeq {
            j,
            values: values.into_iter().map(|v| Complex64::new(v, 0.0)).collect(),
            provenance: Provenance::Supplied,
        }
    }

    pub fn n_max(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn get(&self, n: usize) -> Complex64 {
        self.values.get(n).copied().unwrap_or_default()
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        RadialSeq {
            j: self.j,
            values: self.values.iter().map(|v| v * s).collect(),
            provenance: self.provenance,
        }
    }

    /// Largest `|a(n) - b(n)| / max(|a(n)|, |b(n)|, floor)` over common levels.
    pub fn max_relative_deviation(&self, other: &RadialSeq, floor: f64) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm() / a.norm().max(b.norm()).max(floor))
            .fold(0.0, f64::max)
    }
}
