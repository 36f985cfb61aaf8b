//! TOML problem descriptions: the probability space, the generator
//! stack, grids, an optional claimed growth envelope and the
//! renormalization parameters.

use std::path::Path;

use anyhow::{bail, Context};
use num_complex::Complex64;
use serde::Deserialize;
use yosida_core::checker::CheckerConfig;
use yosida_core::linalg::CMatrix;
use yosida_core::semigroup::Generator;
use yosida_core::{AtomSpace, L0Scalar, ModuleHom};

pub const SCHEMA_VERSION: u32 = 1;

/// Scalar field of the module. Real inputs restrict shift sampling to
/// the real line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    pub fn as_str(self) -> &'static str {
        match self {
            Field::Real => "real",
            Field::Complex => "complex",
        }
    }
}

/// One matrix entry: a bare real number or a `[re, im]` pair.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
pub enum EntrySpec {
    Real(f64),
    Complex([f64; 2]),
}

impl EntrySpec {
    fn to_complex(self) -> Complex64 {
        match self {
            EntrySpec::Real(re) => Complex64::new(re, 0.0),
            EntrySpec::Complex([re, im]) => Complex64::new(re, im),
        }
    }

    fn is_real(self) -> bool {
        matches!(self, EntrySpec::Real(_))
            || matches!(self, EntrySpec::Complex([_, im]) if im == 0.0)
    }
}

/// A scalar given either as one number for every atom or atom by atom.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum BroadcastSpec {
    Scalar(f64),
    PerAtom(Vec<f64>),
}

impl BroadcastSpec {
    pub fn to_scalar(&self, space: &AtomSpace) -> anyhow::Result<L0Scalar> {
        match self {
            BroadcastSpec::Scalar(v) => Ok(L0Scalar::constant(space.clone(), *v)),
            BroadcastSpec::PerAtom(values) => {
                if values.len() != space.atoms() {
                    bail!(
                        "per-atom value list has {} entries but the space has {} atoms",
                        values.len(),
                        space.atoms()
                    );
                }
                Ok(L0Scalar::from_real(space.clone(), values)?)
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSection {
    /// Atom probabilities; must be strictly positive and sum to one.
    pub probs: Vec<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSection {
    pub dim: usize,
    /// One square matrix per atom, or a single matrix broadcast to
    /// every atom. Rows are lists of entries.
    pub mats: Vec<Vec<Vec<EntrySpec>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSection {
    /// Time horizon of the verification window.
    pub horizon: f64,
    /// Grid points on the window.
    pub points: usize,
    /// Largest resolvent power checked.
    pub n_max: usize,
    /// Envelope certification rounds.
    pub max_rounds: usize,
    /// Real shifts sampled per condition.
    pub real_offsets: usize,
    /// Imaginary offsets per real shift for the complex condition.
    pub imag_offsets: usize,
}

impl Default for GridSection {
    fn default() -> Self {
        let base = CheckerConfig::default();
        GridSection {
            horizon: base.horizon,
            points: base.grid_points,
            n_max: base.n_max,
            max_rounds: base.max_rounds,
            real_offsets: base.real_offsets,
            imag_offsets: base.imag_offsets,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvelopeSection {
    pub m: BroadcastSpec,
    pub tau: BroadcastSpec,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RenormSection {
    /// Shifts used for the resolvent-power norm family, ascending.
    pub eta_grid: Vec<f64>,
    /// Power truncation of each member norm.
    pub n_max: usize,
    /// Consecutive powers without gain before a member counts as
    /// stabilized.
    pub stabilization_k: usize,
    /// Horizon of the orbit supremum norm.
    pub orbit_horizon: f64,
    /// Base grid points for the orbit supremum.
    pub orbit_points: usize,
}

impl Default for RenormSection {
    fn default() -> Self {
        RenormSection {
            eta_grid: vec![1.0, 2.0, 4.0],
            n_max: 64,
            stabilization_k: 8,
            orbit_horizon: 12.0,
            orbit_points: 64,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ToleranceSection {
    /// Largest defect accepted as numerically zero.
    pub tolerance: f64,
}

impl Default for ToleranceSection {
    fn default() -> Self {
        ToleranceSection { tolerance: 1e-9 }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    /// Directory for report and data files; the `--out` flag wins.
    pub dir: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub schema_version: u32,
    #[serde(default = "default_field")]
    pub field: Field,
    #[serde(default)]
    pub seed: Option<u64>,
    pub space: SpaceSection,
    pub generator: GeneratorSection,
    #[serde(default)]
    pub grids: GridSection,
    #[serde(default)]
    pub envelope: Option<EnvelopeSection>,
    #[serde(default)]
    pub renorm: RenormSection,
    #[serde(default)]
    pub tolerances: ToleranceSection,
    #[serde(default)]
    pub output: OutputSection,
}

fn default_field() -> Field {
    Field::Complex
}

impl Config {
    pub fn load(path: &Path) -> anyhow::Result<Config> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        let config: Config = toml::from_str(&text)
            .with_context(|| format!("cannot parse config {}", path.display()))?;
        if config.schema_version != SCHEMA_VERSION {
            bail!(
                "config {} has schema_version {}, this build reads {}",
                path.display(),
                config.schema_version,
                SCHEMA_VERSION
            );
        }
        config.validate()?;
        Ok(config)
    }

    /// Re-runs validation after command line overrides.
    pub fn revalidate(&self) -> anyhow::Result<()> {
        self.validate()
    }

    fn validate(&self) -> anyhow::Result<()> {
        if self.space.probs.is_empty() {
            bail!("[space] probs must list at least one atom");
        }
        if self.generator.dim == 0 {
            bail!("[generator] dim must be positive");
        }
        let atoms = self.space.probs.len();
        let count = self.generator.mats.len();
        if count != 1 && count != atoms {
            bail!(
                "[generator] mats lists {} matrices; expected 1 (broadcast) or {} (one per atom)",
                count,
                atoms
            );
        }
        for (k, mat) in self.generator.mats.iter().enumerate() {
            if mat.len() != self.generator.dim
                || mat.iter().any(|row| row.len() != self.generator.dim)
            {
                bail!(
                    "[generator] matrix {} is not {dim} x {dim}",
                    k,
                    dim = self.generator.dim
                );
            }
            if self.field == Field::Real {
                for row in mat {
                    for entry in row {
                        if !entry.is_real() {
                            bail!(
                                "field = \"real\" forbids complex entries, found one in matrix {}",
                                k
                            );
                        }
                    }
                }
            }
        }
        if !self.renorm.eta_grid.windows(2).all(|w| w[0] < w[1]) {
            bail!("[renorm] eta_grid must be strictly ascending");
        }
        if self.renorm.eta_grid.iter().any(|&eta| eta <= 0.0) {
            bail!("[renorm] eta_grid entries must be positive");
        }
        if self.tolerances.tolerance <= 0.0 {
            bail!("[tolerances] tolerance must be positive");
        }
        Ok(())
    }

    pub fn space(&self) -> anyhow::Result<AtomSpace> {
        Ok(AtomSpace::new(&self.space.probs)?)
    }

    pub fn build_generator(&self, space: &AtomSpace) -> anyhow::Result<Generator> {
        let dim = self.generator.dim;
        let to_matrix = |spec: &Vec<Vec<EntrySpec>>| -> anyhow::Result<CMatrix> {
            let rows: Vec<Vec<Complex64>> = spec
                .iter()
                .map(|row| row.iter().map(|e| e.to_complex()).collect())
                .collect();
            Ok(CMatrix::from_rows(&rows)?)
        };
        let hom = if self.generator.mats.len() == 1 {
            ModuleHom::broadcast(space.clone(), to_matrix(&self.generator.mats[0])?)
        } else {
            let mats = self
                .generator
                .mats
                .iter()
                .map(to_matrix)
                .collect::<anyhow::Result<Vec<CMatrix>>>()?;
            ModuleHom::from_mats(space.clone(), mats)?
        };
        if hom.dim() != dim {
            bail!("matrix size does not match [generator] dim");
        }
        Ok(Generator::new(hom)?)
    }

    /// Claimed envelope pair, when the config carries one.
    pub fn envelope_claim(
        &self,
        space: &AtomSpace,
    ) -> anyhow::Result<Option<(L0Scalar, L0Scalar)>> {
        match &self.envelope {
            None => Ok(None),
            Some(section) => {
                let m = section.m.to_scalar(space)?;
                let tau = section.tau.to_scalar(space)?;
                Ok(Some((m, tau)))
            }
        }
    }

    pub fn checker_config(&self) -> CheckerConfig {
        let mut cc = CheckerConfig {
            horizon: self.grids.horizon,
            grid_points: self.grids.points,
            max_rounds: self.grids.max_rounds,
            n_max: self.grids.n_max,
            real_offsets: self.grids.real_offsets,
            imag_offsets: self.grids.imag_offsets,
            seed: self.seed.unwrap_or(7),
            tolerance: self.tolerances.tolerance,
        };
        if self.field == Field::Real {
            cc.imag_offsets = 0;
        }
        cc
    }
}
