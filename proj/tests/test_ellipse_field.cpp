#include <doctest.h>

#include <cmath>
#include <complex>
#include <memory>

#include "bmround/body_io.hpp"
#include "bmround/ellipse_field.hpp"
#include "bmround/rng.hpp"
#include "test_helpers.hpp"

using namespace bmr;
using doctest::Approx;

TEST_SUITE_BEGIN("ellipse_field");

TEST_CASE("ellipse to dilatation coefficient") {
    // Circle: exactly zero.
    CHECK(ellipse_to_beltrami(make_ellipse(1.3, 1.3, 0.9)) ==
          std::complex<double>(0.0, 0.0));
    // Axis ratio 2 along x: (2-1)/(2+1) = 1/3, argument 0.
    const std::complex<double> mu = ellipse_to_beltrami(make_ellipse(2, 1, 0));
    CHECK(mu.real() == Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(mu.imag() == 0.0);
    // Same shape along y: argument pi, so -1/3.
    const std::complex<double> muy =
        ellipse_to_beltrami(make_ellipse(2, 1, kPi / 2));
    CHECK(muy.real() == Approx(-1.0 / 3.0).epsilon(1e-12));
    CHECK(muy.imag() == Approx(0.0).epsilon(1e-15));
}

TEST_CASE("rotating the ellipse rotates the coefficient at twice the angle") {
    Rng rng(606);
    for (int k = 0; k < 100; ++k) {
        const double a = rng.uniform(1.0, 3.0);
        const double b = rng.uniform(0.2, 1.0);
        const double th = rng.uniform(0.0, kPi);
        const double beta = rng.uniform(0.0, kPi);
        const std::complex<double> base = ellipse_to_beltrami(make_ellipse(a, b, th));
        const std::complex<double> rot =
            ellipse_to_beltrami(make_ellipse(a, b, mod_pi(th + beta)));
        const std::complex<double> expected =
            std::polar(1.0, 2.0 * beta) * base;
        CHECK(std::abs(rot - expected) <= 1e-9);
    }
}

TEST_CASE("norm field construction and lookup") {
    auto sq = std::make_shared<const SymmetricConvexBody>(bmrtest::unit_square());
    auto hex = std::make_shared<const SymmetricConvexBody>(bmrtest::hexagon());
    const NormField field(Rect{0, 0, 2, 1}, 2, 1, {sq, hex});
    CHECK(field.nx() == 2);
    CHECK(field.ny() == 1);
    CHECK_FALSE(field.is_constant());
    CHECK(&field.cell(0, 0) == sq.get());
    CHECK(&field.cell(1, 0) == hex.get());
    CHECK_THROWS_AS(field.cell(2, 0), std::out_of_range);
    CHECK_THROWS_AS(NormField(Rect{0, 0, 1, 1}, 2, 1, {sq}),
                    std::invalid_argument);

    const NormField constant = NormField::constant(sq, Rect{0, 0, 1, 1});
    CHECK(constant.is_constant());
}

TEST_CASE("square cells produce an exactly zero coefficient") {
    auto sq = std::make_shared<const SymmetricConvexBody>(bmrtest::unit_square());
    const NormField field = NormField::constant(sq, Rect{0, 0, 1, 1});
    const FieldBeltrami fb = field_to_beltrami(field);
    REQUIRE(fb.mu.size() == 1);
    CHECK(fb.mu[0] == std::complex<double>(0.0, 0.0));
    CHECK(fb.max_abs == 0.0);
}

TEST_CASE("rectangle cells give coefficient 1/3 along the long axis") {
    auto rect =
        std::make_shared<const SymmetricConvexBody>(bmrtest::rectangle_2x1());
    const NormField field = NormField::constant(rect, Rect{0, 0, 1, 1});
    const FieldBeltrami fb = field_to_beltrami(field);
    REQUIRE(fb.mu.size() == 1);
    CHECK(fb.mu[0].real() == Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(std::fabs(fb.mu[0].imag()) < 1e-9);
}

TEST_CASE("ellipse-ball cells recover the ellipse's own coefficient") {
    // The canonical ellipse of a norm whose unit ball is an ellipse is that
    // ellipse itself, so the field coefficient must match it.
    const Ellipse shape = make_ellipse(1.6, 0.9, 0.7);
    auto body = std::make_shared<const SymmetricConvexBody>(
        SymmetricConvexBody::from_ellipse(shape));
    const NormField field = NormField::constant(body, Rect{0, 0, 1, 1});
    const FieldBeltrami fb = field_to_beltrami(field);
    const std::complex<double> expected = ellipse_to_beltrami(shape);
    CHECK(std::abs(fb.mu[0] - expected) <= 1e-5);
}

TEST_CASE("uniformizer straightens its own body") {
    // Applying the uniformizer to the body yields a nearly round image; the
    // corrective map of the resulting canonical ellipse is the inverse.
    const SymmetricConvexBody body = bmrtest::rectangle_2x1();
    const LinearMap2 nu = affine_uniformizer(body);
    const SymmetricConvexBody image = body.apply_map(nu);
    CHECK(image.outer_radius() / image.inner_radius() ==
          Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK(nu.det() == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("shared cell bodies are rounded once and agree") {
    auto rect =
        std::make_shared<const SymmetricConvexBody>(bmrtest::rectangle_2x1());
    auto sq = std::make_shared<const SymmetricConvexBody>(bmrtest::unit_square());
    const NormField field(Rect{0, 0, 3, 1}, 3, 1, {rect, sq, rect});
    const FieldBeltrami fb = field_to_beltrami(field);
    REQUIRE(fb.mu.size() == 3);
    CHECK(fb.mu[0] == fb.mu[2]);  // same object, same coefficient bit for bit
    CHECK(fb.mu[1] == std::complex<double>(0.0, 0.0));
    CHECK(fb.max_abs == Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("field JSON parsing") {
    const NormField field = parse_field_json(R"({
        "rect": [0, 0, 2, 1], "nx": 2, "ny": 1,
        "cells": [{"type": "lp", "p": "inf"},
                  {"type": "polygon", "vertices": [[2,1],[-2,1],[-2,-1],[2,-1]]}]
    })");
    CHECK(field.nx() == 2);
    CHECK(field.rect().x1 == 2.0);
    CHECK(field.cell(0, 0).area() == Approx(4.0));
    CHECK(field.cell(1, 0).area() == Approx(8.0));

    const NormField constant =
        parse_field_json(R"({"constant": {"type": "lp", "p": 2}})");
    CHECK(constant.is_constant());
    CHECK(constant.rect().x1 == 1.0);  // defaults to the unit square

    CHECK_THROWS_AS(parse_field_json("{\"nx\": 1}"), ValidationError);
    CHECK_THROWS_AS(parse_field_json("not json"), ValidationError);
}

TEST_SUITE_END();
