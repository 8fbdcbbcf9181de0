pub mod disc;
pub mod exact;
pub mod halfplane;
