pub mod catalog;
pub mod error;
pub mod exactla;
pub mod generators;
pub mod graphs;
pub mod harness;
pub mod hyper;
pub mod matrix;
pub mod polyhedra;
pub mod spaces;
pub mod symmetry;
pub mod zeroone;

pub use error::{Error, Result};
pub use exactla::{IntMat, IntVec};
pub use spaces::{Coord, Space, SpaceKind};

/// Wall-clock stopwatch. The browser target has no clock, so there it
/// always reads zero.
#[derive(Clone, Copy, Debug)]
pub struct Stopwatch(#[cfg(not(target_arch = "wasm32"))] std::time::Instant);

impl Stopwatch {
    pub fn start() -> Self {
        #[cfg(not(target_arch = "wasm32"))]
        return Stopwatch(std::time::Instant::now());
        #[cfg(target_arch = "wasm32")]
        return Stopwatch();
    }

    pub fn elapsed(&self) -> std::time::Duration {
        #[cfg(not(target_arch = "wasm32"))]
        return self.0.elapsed();
        #[cfg(target_arch = "wasm32")]
        return std::time::Duration::ZERO;
    }
}

/// Runs `f` on a pool of `threads` workers (`0` picks the default).
#[cfg(feature = "parallel")]
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Without the `parallel` feature everything runs on the calling thread.
#[cfg(not(feature = "parallel"))]
pub fn with_threads<T>(_threads: usize, f: impl FnOnce() -> T) -> T {
    f()
}
