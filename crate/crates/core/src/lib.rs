pub mod polyrat;
pub mod gfsystem;
pub mod tessmap;
pub mod census;
pub mod analysis;
pub mod render;
pub mod catalog;
