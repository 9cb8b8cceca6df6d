pub mod bilinear;
pub mod jcount;
pub mod jsweep;
pub mod kloosterman;
pub mod lattice;
pub mod trilinear;
pub mod verify;
pub mod weil;
