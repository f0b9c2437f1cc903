//! Command line interface. Placeholder while the library modules land.

pub fn run() -> i32 {
    eprintln!("equitor: not yet wired up");
    2
}
