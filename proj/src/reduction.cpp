#include "wordmap/reduction.hpp"

#include <cmath>

#include "wordmap/factor.hpp"

namespace wordmap {

Plan plan(const Matrix& a, std::uint64_t seed) {
  if (!a.is_square()) fail(ErrorCode::NonSquare, "plan needs a square matrix");
  const FieldPtr& f = a.field();
  if (f->is_exact() && !is_separable(charpoly(a))) {
    fail(ErrorCode::InseparableCharPoly, "characteristic polynomial is not separable");
  }
  const GeneralizedJordanForm gjf = generalized_jordan_form(a, seed);
  const auto offsets = gjf.offsets();
  Plan out{{}, gjf.conjugator, a};
  for (std::size_t b = 0; b < gjf.blocks.size(); ++b) {
    const auto& blk = gjf.blocks[b];
    BlockPlan bp;
    bp.block = blk;
    bp.offset = offsets[b];
    if (blk.degree() == 1) {
      bp.field = f;
      bp.alpha = -blk.p.coeff(0);
    } else if (f->kind() == FieldKind::Real) {
      if (blk.degree() != 2) fail(ErrorCode::UnhandledShape, "real block of degree > 2");
      bp.field = Field::complex(f->tolerance());
      const double a1 = blk.p.coeff(1).real(), a0 = blk.p.coeff(0).real();
      bp.alpha = from_complex(bp.field, {-a1 / 2, std::sqrt(std::max(0.0, 4 * a0 - a1 * a1)) / 2});
      bp.lifted = true;
    } else {
      const Extension ext = extend(f, blk.p);
      bp.field = ext.field;
      bp.alpha = ext.generator;
      bp.lifted = true;
    }
    bp.target = Matrix::jordan_block(bp.alpha, blk.l);
    out.blocks.push_back(std::move(bp));
  }
  return out;
}

std::vector<Matrix> assemble(const Plan& plan, const std::vector<BlockSolution>& solutions,
                             const WordEvaluator& word, double slack) {
  if (solutions.size() != plan.blocks.size()) fail(ErrorCode::InvalidArgument, "one solution per block required");
  const FieldPtr& f = plan.source.field();
  const std::size_t arity = solutions.empty() ? 0 : solutions[0].size();
  const Matrix pinv = inverse(plan.conjugator);
  std::vector<Matrix> out;
  for (std::size_t pos = 0; pos < arity; ++pos) {
    std::vector<Matrix> parts;
    for (std::size_t b = 0; b < plan.blocks.size(); ++b) {
      if (solutions[b].size() != arity) fail(ErrorCode::InvalidArgument, "ragged block solutions");
      const auto& bp = plan.blocks[b];
      const Matrix& w = solutions[b][pos];
      parts.push_back(bp.lifted ? companion_lift(w, bp.block.p) : w);
    }
    Matrix m = pinv * Matrix::direct_sum(parts) * plan.conjugator;
    if (f->kind() == FieldKind::Real && !same_field(m.field(), f)) m = real_part(f, m);
    out.push_back(std::move(m));
  }
  if (!agrees(word(out), plan.source, slack)) fail(ErrorCode::VerificationFailed, "assembled witness does not verify");
  return out;
}

}  // namespace wordmap
