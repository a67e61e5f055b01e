#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "saddleprec/projector.hpp"
#include "test_support.hpp"

using namespace saddleprec;
using namespace saddleprec::testing;

TEST_CASE("identity is a projector of full rank") {
  Projector p;
  p.matrix = DenseMatrix::identity(4);
  p.range_witness = DenseMatrix::identity(4);
  p.kernel_witness = DenseMatrix(4, 0);
  const auto rep = verify_projector(p, 1e-10);
  CHECK(rep.pass);
  CHECK(rep.rank == 4);
}

TEST_CASE("hand-checkable rank-1 projector") {
  // P = [[1,1],[0,0]]: P^2 = P, range e1, kernel (1,-1)^T.
  Projector p;
  p.matrix = DenseMatrix{{1.0, 1.0}, {0.0, 0.0}};
  p.range_witness = DenseMatrix{{1.0}, {0.0}};
  p.kernel_witness = DenseMatrix{{1.0}, {-1.0}};
  const auto rep = verify_projector(p, 1e-10);
  CHECK(rep.pass);
  CHECK(rep.rank == 1);
  CHECK(rep.idempotence_residual <= 1e-14);
}

TEST_CASE("non-idempotent matrix fails") {
  Projector p;
  p.matrix = DenseMatrix{{1.0, 0.0}, {0.0, 2.0}};
  const auto rep = verify_projector(p, 1e-10);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("wrong witness fails even when idempotent") {
  Projector p;
  p.matrix = DenseMatrix{{1.0, 1.0}, {0.0, 0.0}};
  p.kernel_witness = DenseMatrix{{1.0}, {1.0}};  // not in the kernel
  const auto rep = verify_projector(p, 1e-10);
  CHECK_FALSE(rep.pass);
}
