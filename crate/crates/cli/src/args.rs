use std::path::PathBuf;

use clap::{Args, ValueEnum};
use kopt_core::io::{read_cut, read_instance};
use kopt_core::maxcut::{build_michel_scott, build_modified_michel_scott, random_instance, Cut, MaxCutInstance, Pivot, Side};
use kopt_core::reduction::{build_labeling, Labeling, LabelingKind};
use kopt_core::verify::EnumCaps;
use kopt_core::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    MichelScott,
    Modified,
    Random,
}

/// Where the Max-Cut instance and starting cut come from.
#[derive(Args, Clone, Debug)]
pub struct Source {
    /// Instance JSON file; overrides --family.
    #[arg(long)]
    pub instance: Option<PathBuf>,
    /// Cut JSON file; defaults to the family's initial cut, or all first.
    #[arg(long)]
    pub cut: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Recursion depth, or vertex count for random instances.
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Path length of the modified family.
    #[arg(long, default_value_t = 3)]
    pub p: u32,
    /// Seed of random instances and of the random pivot.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 4)]
    pub max_degree: usize,
    #[arg(long, default_value_t = 5)]
    pub max_abs: i64,
}

impl Source {
    pub fn load(&self) -> Result<(MaxCutInstance, Cut)> {
        let (inst, cut) = match (&self.instance, self.family) {
            (Some(path), _) => {
                let inst = read_instance(path)?;
                let n = inst.num_vertices();
                (inst, Cut::uniform(n, Side::First))
            }
            (None, Some(Family::MichelScott)) => build_michel_scott(self.n),
            (None, Some(Family::Modified)) => build_modified_michel_scott(self.n, self.p)?,
            (None, Some(Family::Random)) => {
                let inst = random_instance(self.n as usize, self.max_degree, self.max_abs, self.seed);
                let n = inst.num_vertices();
                (inst, Cut::uniform(n, Side::First))
            }
            (None, None) => return Err(Error::Input("give --instance or --family".into())),
        };
        let cut = match &self.cut {
            Some(path) => read_cut(path, &inst)?,
            None => cut,
        };
        Ok((inst, cut))
    }
}

#[derive(Args, Clone, Debug)]
pub struct LabelArgs {
    #[arg(long, default_value = "k13")]
    pub labeling: LabelingKind,
    /// Swap bound; defaults to the smallest the labeling supports.
    #[arg(long)]
    pub k: Option<i64>,
}

impl LabelArgs {
    pub fn build(&self, inst: &MaxCutInstance) -> Result<Labeling> {
        build_labeling(self.labeling, inst, self.k.unwrap_or(self.labeling.min_k()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PivotRule {
    First,
    Steepest,
    Random,
}

#[derive(Args, Clone, Debug)]
pub struct PivotArgs {
    #[arg(long, value_enum, default_value_t = PivotRule::First)]
    pub pivot: PivotRule,
    #[arg(long, default_value_t = 1_000_000)]
    pub limit: usize,
}

impl PivotArgs {
    /// The random pivot draws from `seed`.
    pub fn pivot(&self, seed: u64) -> Pivot {
        match self.pivot {
            PivotRule::First => Pivot::First,
            PivotRule::Steepest => Pivot::Steepest,
            PivotRule::Random => Pivot::Random(seed),
        }
    }
}

#[derive(Args, Clone, Debug)]
pub struct CapArgs {
    /// Partial-state cap of tour enumeration.
    #[arg(long, default_value_t = 10_000_000)]
    pub cap: u64,
    #[arg(long, default_value_t = 1_000_000)]
    pub tour_cap: usize,
}

impl CapArgs {
    pub fn caps(&self) -> EnumCaps {
        EnumCaps {
            states: self.cap,
            tours: self.tour_cap,
        }
    }
}
