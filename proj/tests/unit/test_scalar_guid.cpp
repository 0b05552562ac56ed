#include "doctest.h"

#include "xrl/guid.hpp"
#include "xrl/scalar.hpp"

using namespace xrl;

TEST_CASE("plain scalar classification")
{
  CHECK(classify_plain_scalar("").type() == ScalarType::Null);
  CHECK(classify_plain_scalar("~").type() == ScalarType::Null);
  CHECK(classify_plain_scalar("null").type() == ScalarType::Null);
  CHECK(classify_plain_scalar("NULL").type() == ScalarType::Null);

  CHECK(classify_plain_scalar("true").as_bool());
  CHECK(classify_plain_scalar("True").as_bool());
  CHECK_FALSE(classify_plain_scalar("false").as_bool());
  CHECK(classify_plain_scalar("yes").type() == ScalarType::Text);  // 1.2 core style

  CHECK(classify_plain_scalar("42").as_int() == 42);
  CHECK(classify_plain_scalar("-7").as_int() == -7);
  CHECK(classify_plain_scalar("+3").as_int() == 3);
  CHECK(classify_plain_scalar("2.5").as_real() == doctest::Approx(2.5));
  CHECK(classify_plain_scalar(".5").as_real() == doctest::Approx(0.5));
  CHECK(classify_plain_scalar("12e2").as_real() == doctest::Approx(1200.0));
  CHECK(classify_plain_scalar("-1.5e-3").as_real() == doctest::Approx(-0.0015));

  CHECK(classify_plain_scalar("hello").type() == ScalarType::Text);
  CHECK(classify_plain_scalar("12abc").type() == ScalarType::Text);
  CHECK(classify_plain_scalar("1.2.3").type() == ScalarType::Text);
  CHECK(classify_plain_scalar("nan").type() == ScalarType::Text);
  // out-of-range integers degrade to text rather than losing digits
  CHECK(classify_plain_scalar("99999999999999999999999").type() == ScalarType::Text);
}

TEST_CASE("real formatting round-trips and keeps the real type")
{
  CHECK(format_real(2.5) == "2.5");
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(1000.0) == "1000.0");
  CHECK(classify_plain_scalar(format_real(1000.0)).type() == ScalarType::Real);
  CHECK(classify_plain_scalar(format_real(1e300)).type() == ScalarType::Real);
}

TEST_CASE("guid parsing normalizes case")
{
  auto g = Guid::parse("3F2504E0-4F89-11D3-9A0C-0305E82C3301");
  REQUIRE(g.has_value());
  CHECK(g->text() == "3f2504e0-4f89-11d3-9a0c-0305e82c3301");
  CHECK(g->is_valid());
}

TEST_CASE("guid parsing rejects malformed input")
{
  CHECK_FALSE(Guid::parse("3f2504e04f8911d39a0c0305e82c3301").has_value());  // no hyphens
  CHECK_FALSE(Guid::parse("zz2504e0-4f89-11d3-9a0c-0305e82c3301").has_value());
  CHECK_FALSE(Guid::parse("").has_value());
  CHECK_FALSE(Guid::parse("3f2504e0-4f89-11d3-9a0c-0305e82c33011").has_value());
  CHECK(guid_format_error("3f2504e04f8911d39a0c0305e82c3301").find("length") !=
        std::string::npos);
  CHECK(guid_format_error("3f2504e0x4f89x11d3x9a0cx0305e82c3301").find("grouping") !=
        std::string::npos);
  CHECK(guid_format_error("zz2504e0-4f89-11d3-9a0c-0305e82c3301").find("hex") !=
        std::string::npos);
}

TEST_CASE("lenient guids keep the text and report validity")
{
  Guid g = Guid::lenient("NOT-A-GUID");
  CHECK(g.text() == "not-a-guid");
  CHECK_FALSE(g.is_valid());
}
