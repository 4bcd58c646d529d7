//! Chain-level Adams operations on complexes of cubes of finite free
//! modules over the rationals and over polynomial rings.

pub mod cubes;
pub mod exactalg;
pub mod multiindex;
pub mod objects;
pub mod splitcubes;
pub mod adams;
pub mod transgression;
pub mod verify;
