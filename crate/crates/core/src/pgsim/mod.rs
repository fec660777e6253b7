//! A Pokémon Go simulator that records each player's actions as a
//! provenance graph.
//!
//! Players on a torus grid collect balls at PokéStops, walk to target
//! Pokémon and throw balls at them. Team strategies decide which Pokémon is
//! targeted and which stored one is disposed of when storage is full. Every
//! run yields one graph per player, labelled with the player's team.

mod recorder;
mod world;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::exec::Exec;
use crate::model::{Dataset, ModelError};

pub use recorder::{ProvRecorder, SCHEMA_LABELS};
pub use world::{select_disposal, select_target, throw_succeeds, Captured, Event, Player, Pokemon, Pos, WorldState};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid simulation parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Team {
    Valor,
    Mystic,
    Instinct,
}

impl Team {
    pub const ALL: [Team; 3] = [Team::Valor, Team::Mystic, Team::Instinct];

    pub fn as_str(self) -> &'static str {
        match self {
            Team::Valor => "Valor",
            Team::Mystic => "Mystic",
            Team::Instinct => "Instinct",
        }
    }

    /// Round-robin assignment by player index.
    pub fn of_player(index: usize) -> Team {
        Team::ALL[index % 3]
    }
}

impl fmt::Display for Team {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which team behaviour is switched on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimMode {
    /// Team-specific targeting, nobody disposes.
    Targeting,
    /// Everyone targets the closest Pokémon, team-specific disposal.
    Disposal,
}

impl SimMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SimMode::Targeting => "targeting",
            SimMode::Disposal => "disposal",
        }
    }
}

impl FromStr for SimMode {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "targeting" | "t" | "T" => Ok(SimMode::Targeting),
            "disposal" | "d" | "D" => Ok(SimMode::Disposal),
            _ => Err(SimError::InvalidParams(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimParams {
    pub n_pokemons: usize,
    pub n_pokestops: usize,
    pub n_players: usize,
    pub max_storage: usize,
    pub grid: (u32, u32),
    pub max_ticks: u32,
    pub seed: u64,
    pub mode: SimMode,
    /// Strengths are drawn from `0..strength_cap`; a throw draws from the
    /// same range.
    pub strength_cap: u32,
    /// Inclusive spawn lifetime range in ticks.
    pub lifetime: (u32, u32),
    /// Inclusive range of balls collected per PokéStop visit.
    pub collect: (u32, u32),
    pub initial_balls: u32,
}

impl SimParams {
    pub fn new(mode: SimMode, seed: u64) -> Self {
        SimParams {
            n_pokemons: 100,
            n_pokestops: 20,
            n_players: 30,
            max_storage: 20,
            grid: (50, 50),
            max_ticks: 500,
            seed,
            mode,
            strength_cap: 3500,
            lifetime: (50, 200),
            collect: (5, 15),
            initial_balls: 10,
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |m: &str| Err(SimError::InvalidParams(m.to_string()));
        if self.n_players == 0 || !self.n_players.is_multiple_of(3) {
            return bad("n_players must be a positive multiple of 3");
        }
        if self.n_pokemons == 0 || self.n_pokestops == 0 || self.max_storage == 0 {
            return bad("counts must be at least 1");
        }
        if self.grid.0 == 0 || self.grid.1 == 0 {
            return bad("grid must be non-empty");
        }
        if self.strength_cap == 0 {
            return bad("strength_cap must be positive");
        }
        if self.lifetime.0 == 0 || self.lifetime.0 > self.lifetime.1 {
            return bad("lifetime range must satisfy 1 <= lo <= hi");
        }
        if self.collect.0 == 0 || self.collect.0 > self.collect.1 {
            return bad("collect range must satisfy 1 <= lo <= hi");
        }
        Ok(())
    }
}

fn graph_id(seed: u64, player: usize) -> String {
    format!("s{seed}-p{player:02}")
}

/// Runs one simulation; returns one graph per player labelled with its team.
pub fn run_simulation(params: &SimParams) -> Result<Dataset, SimError> {
    params.validate()?;
    let mut world = WorldState::new(params);
    let mut recorders: Vec<ProvRecorder> =
        (0..params.n_players).map(|p| ProvRecorder::new(graph_id(params.seed, p))).collect();
    while world.tick() < params.max_ticks {
        for event in world.step() {
            recorders[event.player()].record(&event);
        }
    }
    let graphs = recorders.into_iter().map(ProvRecorder::finish).collect::<Result<Vec<_>, _>>()?;
    let labels = (0..params.n_players).map(|p| Team::of_player(p).as_str().to_string()).collect();
    Ok(Dataset::new(graphs, labels)?)
}

/// Runs `n_sims` simulations with seeds `base.seed + i` and concatenates
/// them in seed order. Runs execute concurrently under `exec`.
pub fn generate_dataset(base: &SimParams, n_sims: usize, exec: Exec) -> Result<Dataset, SimError> {
    if n_sims == 0 {
        return Err(SimError::InvalidParams("n_sims must be at least 1".into()));
    }
    base.validate()?;
    let runs = exec.map_range(n_sims, |i| {
        let params = SimParams { seed: base.seed.wrapping_add(i as u64), ..base.clone() };
        run_simulation(&params)
    });
    let mut ds = Dataset::empty();
    for run in runs {
        ds = ds.concat(run?)?;
    }
    let meta = json!({
        "generator": "pgsim",
        "params": base,
        "n_sims": n_sims,
        "seeds": (0..n_sims).map(|i| base.seed.wrapping_add(i as u64)).collect::<Vec<_>>(),
        "schema": SCHEMA_LABELS,
    });
    Ok(ds.with_meta(meta))
}
