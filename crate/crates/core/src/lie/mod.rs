pub mod basis;
pub mod context;
pub mod element;
pub mod random;
pub mod text;
pub mod word;

pub use basis::{basis, LieMonomial, MonomialKind};
pub use context::{make_algebra, AlgebraContext, Context, Generator};
pub use element::{LieElement, TensorMap};
pub use word::Word;
