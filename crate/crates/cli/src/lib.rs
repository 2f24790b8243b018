//! Scenes, verification suites, random instances and SVG figures for the
//! `ninepoint` command.

pub mod random;
pub mod render;
pub mod scene;
pub mod verify;
