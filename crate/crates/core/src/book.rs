// Every chapter of the guide is attached to an empty module so that
// `cargo test --doc` compiles and runs its code listings. One module per
// chapter keeps failures traceable to a file.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}
#[doc = include_str!("../../../book/src/age.md")]
mod age {}
#[doc = include_str!("../../../book/src/network.md")]
mod network {}
#[doc = include_str!("../../../book/src/policies.md")]
mod policies {}
#[doc = include_str!("../../../book/src/optimization.md")]
mod optimization {}
#[doc = include_str!("../../../book/src/bounds.md")]
mod bounds {}
#[doc = include_str!("../../../book/src/experiments.md")]
mod experiments {}
