pub mod counterexample;
pub mod plotdata;
pub mod renorm;
pub mod verify_hy;
