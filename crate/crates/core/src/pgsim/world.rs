use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{SimMode, SimParams, Team};

/// A cell of the torus grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pos {
    pub x: u32,
    pub y: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pokemon {
    pub id: u64,
    pub pos: Pos,
    pub strength: u32,
    /// First tick at which the Pokémon is gone.
    pub expiry: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Captured {
    pub pokemon: u64,
    pub strength: u32,
    pub tick: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Player {
    pub team: Team,
    pub pos: Pos,
    pub balls: u32,
    /// Captures in capture order.
    pub storage: Vec<Captured>,
}

/// Something a player did during a tick.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Event {
    Collected { player: usize, stop: usize, balls: u32 },
    Thrown { player: usize, pokemon: u64, strength: u32, roll: u32, captured: bool },
    Disposed { player: usize, pokemon: u64 },
}

impl Event {
    pub fn player(&self) -> usize {
        match *self {
            Event::Collected { player, .. } | Event::Thrown { player, .. } | Event::Disposed { player, .. } => player,
        }
    }
}

const WORLD_STREAM: u64 = 0;

/// Random stream `stream` positioned at `tick`. Each (stream, tick) pair
/// gets its own window of the ChaCha keystream, so draws never depend on
/// how many numbers other players or ticks consumed.
fn stream_rng(seed: u64, stream: u64, tick: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos(u128::from(tick) << 32);
    rng
}

fn axis_distance(a: u32, b: u32, size: u32) -> u32 {
    let d = a.abs_diff(b);
    d.min(size - d)
}

fn distance(a: Pos, b: Pos, grid: (u32, u32)) -> u32 {
    axis_distance(a.x, b.x, grid.0).max(axis_distance(a.y, b.y, grid.1))
}

fn axis_step(from: u32, to: u32, size: u32) -> u32 {
    let forward = (to + size - from) % size;
    if forward == 0 {
        from
    } else if forward <= size / 2 {
        (from + 1) % size
    } else {
        (from + size - 1) % size
    }
}

/// One king's move along the shortest torus path.
fn step_toward(from: Pos, to: Pos, grid: (u32, u32)) -> Pos {
    Pos { x: axis_step(from.x, to.x, grid.0), y: axis_step(from.y, to.y, grid.1) }
}

/// Index of the Pokémon a player goes after; ties go to the lowest id.
pub fn select_target(team: Team, mode: SimMode, from: Pos, pokemons: &[Pokemon], grid: (u32, u32)) -> Option<usize> {
    let closest = || pokemons.iter().enumerate().min_by_key(|(_, p)| (distance(from, p.pos, grid), p.id));
    let pick = match (mode, team) {
        (SimMode::Targeting, Team::Valor) => {
            pokemons.iter().enumerate().min_by_key(|(_, p)| (std::cmp::Reverse(p.strength), p.id))
        }
        (SimMode::Targeting, Team::Mystic) => pokemons.iter().enumerate().min_by_key(|(_, p)| (p.strength, p.id)),
        _ => closest(),
    };
    pick.map(|(i, _)| i)
}

/// Storage slot to free before a throw, if the team disposes at all.
pub fn select_disposal(team: Team, storage: &[Captured]) -> Option<usize> {
    match team {
        Team::Valor => None,
        Team::Mystic => (!storage.is_empty()).then_some(0),
        Team::Instinct => storage.iter().enumerate().min_by_key(|(i, c)| (c.strength, *i)).map(|(i, _)| i),
    }
}

pub fn throw_succeeds(roll: u32, strength: u32) -> bool {
    roll > strength
}

/// The full game state between ticks.
#[derive(Clone, Debug)]
pub struct WorldState {
    params: SimParams,
    tick: u32,
    next_id: u64,
    pub pokemons: Vec<Pokemon>,
    pub pokestops: Vec<Pos>,
    pub players: Vec<Player>,
}

impl WorldState {
    pub fn new(params: &SimParams) -> Self {
        let mut rng = stream_rng(params.seed, WORLD_STREAM, 0);
        let (w, h) = params.grid;
        let cell = |rng: &mut ChaCha8Rng| Pos { x: rng.random_range(0..w), y: rng.random_range(0..h) };
        let pokestops = (0..params.n_pokestops).map(|_| cell(&mut rng)).collect();
        let players = (0..params.n_players)
            .map(|i| Player { team: Team::of_player(i), pos: cell(&mut rng), balls: params.initial_balls, storage: Vec::new() })
            .collect();
        let mut world =
            WorldState { params: params.clone(), tick: 0, next_id: 0, pokemons: Vec::new(), pokestops, players };
        world.refill(&mut rng);
        world
    }

    pub fn tick(&self) -> u32 {
        self.tick
    }

    pub fn params(&self) -> &SimParams {
        &self.params
    }

    fn refill(&mut self, rng: &mut ChaCha8Rng) {
        let (w, h) = self.params.grid;
        let (lo, hi) = self.params.lifetime;
        while self.pokemons.len() < self.params.n_pokemons {
            let pos = Pos { x: rng.random_range(0..w), y: rng.random_range(0..h) };
            let strength = rng.random_range(0..self.params.strength_cap);
            let expiry = self.tick + rng.random_range(lo..=hi);
            self.pokemons.push(Pokemon { id: self.next_id, pos, strength, expiry });
            self.next_id += 1;
        }
    }

    /// Advances one tick: despawns expired Pokémon and tops the population
    /// back up, then lets each player move and act in index order.
    pub fn step(&mut self) -> Vec<Event> {
        let t = self.tick;
        let mut world_rng = stream_rng(self.params.seed, WORLD_STREAM, t + 1);
        self.pokemons.retain(|p| p.expiry > t);
        self.refill(&mut world_rng);

        let mut events = Vec::new();
        for p in 0..self.players.len() {
            let mut rng = stream_rng(self.params.seed, p as u64 + 1, t);
            self.act(p, &mut rng, &mut events);
        }
        self.tick += 1;
        events
    }

    fn act(&mut self, p: usize, rng: &mut ChaCha8Rng, events: &mut Vec<Event>) {
        let grid = self.params.grid;
        let player = &mut self.players[p];
        if player.balls == 0 {
            let stop = (0..self.pokestops.len())
                .min_by_key(|&s| (distance(player.pos, self.pokestops[s], grid), s))
                .expect("at least one PokéStop");
            player.pos = step_toward(player.pos, self.pokestops[stop], grid);
            if player.pos == self.pokestops[stop] {
                let (lo, hi) = self.params.collect;
                let balls = rng.random_range(lo..=hi);
                player.balls += balls;
                events.push(Event::Collected { player: p, stop, balls });
            }
            return;
        }

        let Some(target) = select_target(player.team, self.params.mode, player.pos, &self.pokemons, grid) else {
            return;
        };
        let Pokemon { id, pos, strength, .. } = self.pokemons[target];
        player.pos = step_toward(player.pos, pos, grid);
        if player.pos != pos {
            return;
        }
        if player.storage.len() >= self.params.max_storage {
            let slot = match self.params.mode {
                SimMode::Disposal => select_disposal(player.team, &player.storage),
                SimMode::Targeting => None,
            };
            // Without room and without a disposal the throw is skipped.
            let Some(slot) = slot else { return };
            let gone = player.storage.remove(slot);
            events.push(Event::Disposed { player: p, pokemon: gone.pokemon });
        }
        let roll = rng.random_range(0..self.params.strength_cap);
        player.balls -= 1;
        let captured = throw_succeeds(roll, strength);
        events.push(Event::Thrown { player: p, pokemon: id, strength, roll, captured });
        if captured {
            player.storage.push(Captured { pokemon: id, strength, tick: self.tick });
            self.pokemons.remove(target);
        }
    }
}
