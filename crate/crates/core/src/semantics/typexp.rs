//! Type expressions.

use crate::data::Body;
use crate::error::AbstractError;
use crate::state::State;
use crate::syntax::ast::TypExp;
use crate::types::LangType;

use super::Interpreter;

impl Interpreter {
    pub fn eval_type_exp(&self, tex: &TypExp, sta: &State) -> Result<LangType, AbstractError> {
        if let Some(e) = sta.error() {
            return Err(e.clone());
        }
        self.typ(tex, sta)
    }

    fn typ(&self, tex: &TypExp, sta: &State) -> Result<LangType, AbstractError> {
        Ok(match tex {
            TypExp::Boolean => LangType::plain(Body::Boolean),
            TypExp::Number => LangType::plain(Body::Number),
            TypExp::Word => LangType::plain(Body::Word),
            TypExp::Named(ide) => sta.lookup_type(ide.as_str()).cloned().ok_or(AbstractError::TYPE_NOT_DEFINED)?,
            TypExp::ListType(t) => LangType::plain(Body::list_of(self.typ(t, sta)?.body)),
            TypExp::ArrayType(t) => LangType::plain(Body::array_of(self.typ(t, sta)?.body)),
            TypExp::RecordType { attr, ty } => LangType::plain(Body::record([(attr.clone(), self.typ(ty, sta)?.body)])),
            TypExp::ExpandRecordType { base, attr, ty } => {
                let LangType { body, transfer } = self.typ(base, sta)?;
                let Body::Record(mut attrs) = body else {
                    return Err(AbstractError::NOT_A_RECORD_TYPE);
                };
                if attrs.contains_key(attr) {
                    return Err(AbstractError::ATTRIBUTE_ALREADY_PRESENT);
                }
                attrs.insert(attr.clone(), self.typ(ty, sta)?.body);
                LangType::new(Body::Record(attrs), transfer)
            }
            TypExp::ReplaceTransferIn { ty, transfer } => {
                let base = self.typ(ty, sta)?;
                LangType::new(base.body, self.eval_transfer_exp(transfer, sta)?)
            }
        })
    }
}
