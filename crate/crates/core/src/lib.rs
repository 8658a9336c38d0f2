pub mod exact;
pub mod par;
pub mod fgl;
pub mod rootsys;
pub mod witt;
pub mod motives;
