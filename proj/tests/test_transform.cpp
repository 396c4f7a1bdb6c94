#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "chordscope/transform.hpp"

using namespace chordscope;

namespace {

ComplexSequence random_complex(std::size_t n, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexSequence x(n);
    for (Complex& v : x) v = {dist(rng), dist(rng)};
    return x;
}

// max |a - b| normalized by max |b|
double relative_error(const Spectrum& a, const Spectrum& b) {
    double err = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        err = std::max(err, std::abs(a[i] - b[i]));
        scale = std::max(scale, std::abs(b[i]));
    }
    return scale > 0.0 ? err / scale : err;
}

} // namespace

TEST_CASE("power-of-two predicate") {
    CHECK(is_power_of_two(1));
    CHECK(is_power_of_two(2));
    CHECK(is_power_of_two(4096));
    CHECK(!is_power_of_two(0));
    CHECK(!is_power_of_two(3));
    CHECK(!is_power_of_two(4097));
}

TEST_CASE("transform of trivial signals") {
    // single sample: F_0 = x_0
    const Spectrum one = dft_naive({Complex{3.0, -2.0}});
    REQUIRE(one.size() == 1);
    CHECK(one[0] == Complex{3.0, -2.0});

    // unit impulse spreads evenly: every bin is exactly 1
    ComplexSequence impulse(8, 0.0);
    impulse[0] = 1.0;
    for (const Spectrum& f : {dft_naive(impulse), fft(impulse)}) {
        for (const Complex& v : f) {
            CHECK(std::abs(v.real() - 1.0) < 1e-12);
            CHECK(std::abs(v.imag()) < 1e-12);
        }
    }

    // constant signal concentrates in bin 0: F_0 = N*c
    ComplexSequence constant(16, Complex{0.5, 0.25});
    const Spectrum f = fft(constant);
    CHECK(std::abs(f[0] - Complex{8.0, 4.0}) < 1e-12);
    for (std::size_t k = 1; k < f.size(); ++k) CHECK(std::abs(f[k]) < 1e-12);
}

TEST_CASE("cosine and sine land on conjugate bin pairs") {
    const std::size_t n = 8;
    ComplexSequence cosine(n), sine(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / 8.0;
        cosine[j] = std::cos(angle);
        sine[j] = std::sin(angle);
    }

    const Spectrum fc = fft(cosine);
    CHECK(std::abs(fc[1] - Complex{4.0, 0.0}) < 1e-12);
    CHECK(std::abs(fc[7] - Complex{4.0, 0.0}) < 1e-12);
    for (std::size_t k : {0u, 2u, 3u, 4u, 5u, 6u}) CHECK(std::abs(fc[k]) < 1e-12);

    const Spectrum fs = fft(sine);
    CHECK(std::abs(fs[1] - Complex{0.0, -4.0}) < 1e-12);
    CHECK(std::abs(fs[7] - Complex{0.0, 4.0}) < 1e-12);
    for (std::size_t k : {0u, 2u, 3u, 4u, 5u, 6u}) CHECK(std::abs(fs[k]) < 1e-12);
}

TEST_CASE("fft matches the naive transform on random input") {
    std::mt19937 rng(7);
    for (std::size_t n = 1; n <= 1024; n *= 2) {
        for (int rep = 0; rep < 3; ++rep) {
            const ComplexSequence x = random_complex(n, rng);
            CHECK(relative_error(fft(x), dft_naive(x)) < 1e-10);
        }
    }
}

TEST_CASE("real input has a conjugate-symmetric spectrum") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexSequence x(256);
    for (Complex& v : x) v = dist(rng);

    const Spectrum f = fft(x);
    for (std::size_t k = 1; k < x.size(); ++k)
        CHECK(std::abs(f[x.size() - k] - std::conj(f[k])) < 1e-10);
}

TEST_CASE("fft is linear") {
    std::mt19937 rng(13);
    const ComplexSequence x = random_complex(128, rng);
    const ComplexSequence y = random_complex(128, rng);
    const Complex a{1.5, -0.5}, b{-2.0, 0.25};

    ComplexSequence combined(128);
    for (std::size_t i = 0; i < 128; ++i) combined[i] = a * x[i] + b * y[i];

    const Spectrum fx = fft(x), fy = fft(y), fc = fft(combined);
    for (std::size_t k = 0; k < 128; ++k)
        CHECK(std::abs(fc[k] - (a * fx[k] + b * fy[k])) < 1e-10);
}

TEST_CASE("ifft inverts fft") {
    std::mt19937 rng(17);
    for (std::size_t n : {1u, 2u, 64u, 1024u}) {
        const ComplexSequence x = random_complex(n, rng);
        const ComplexSequence back = ifft(fft(x));
        REQUIRE(back.size() == n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(back[i] - x[i]) < 1e-11);
    }
}

TEST_CASE("energy is preserved up to the 1/N convention") {
    std::mt19937 rng(19);
    const std::size_t n = 512;
    const ComplexSequence x = random_complex(n, rng);
    const Spectrum f = fft(x);

    double time_energy = 0.0, freq_energy = 0.0;
    for (const Complex& v : x) time_energy += std::norm(v);
    for (const Complex& v : f) freq_energy += std::norm(v);
    CHECK(freq_energy / static_cast<double>(n) ==
          doctest::Approx(time_energy).epsilon(1e-12));
}

TEST_CASE("transform input validation") {
    CHECK_THROWS_AS(dft_naive({}), ValidationError);
    CHECK_THROWS_AS(fft({}), ValidationError);
    CHECK_THROWS_AS(ifft({}), ValidationError);
    CHECK_THROWS_AS(fft(ComplexSequence(3)), ValidationError);
    CHECK_THROWS_AS(fft(ComplexSequence(12)), ValidationError);
    CHECK_THROWS_AS(ifft(Spectrum(5)), ValidationError);
    CHECK_NOTHROW(dft_naive(ComplexSequence(3))); // the naive form takes any N
}

TEST_CASE("frequency axis bookkeeping") {
    const FrequencyAxis axis = frequency_axis(4096, 1.0 / 11025.0);
    CHECK(axis.size == 4096);
    CHECK(axis.duration == doctest::Approx(4096.0 / 11025.0).epsilon(1e-15));
    CHECK(axis.bin_spacing == doctest::Approx(11025.0 / 4096.0).epsilon(1e-12));
    CHECK(axis.bandwidth == doctest::Approx(11025.0).epsilon(1e-12));

    // the grid relations hold exactly by construction
    CHECK(axis.bin_spacing * axis.duration == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(axis.sample_interval * axis.bin_spacing * 4096.0 ==
          doctest::Approx(1.0).epsilon(1e-15));

    // bin frequencies: non-negative through N/2, negative above
    CHECK(axis.bin_frequency(0) == 0.0);
    CHECK(axis.bin_frequency(1) == doctest::Approx(11025.0 / 4096.0));
    CHECK(axis.bin_frequency(2048) == doctest::Approx(5512.5));
    CHECK(axis.bin_frequency(2049) == doctest::Approx(-5512.5 + 11025.0 / 4096.0));
    CHECK(axis.bin_frequency(4095) == doctest::Approx(-11025.0 / 4096.0));

    CHECK_THROWS_AS(frequency_axis(0, 0.001), DomainError);
    CHECK_THROWS_AS(frequency_axis(16, 0.0), DomainError);
    CHECK_THROWS_AS(frequency_axis(16, -1.0), DomainError);
}

TEST_CASE("operation-count speedup ratio") {
    CHECK(speedup_ratio(2.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(speedup_ratio(1024.0) == doctest::Approx(102.4).epsilon(1e-15));
    CHECK(speedup_ratio(2e6) == doctest::Approx(95549.456476523145).epsilon(1e-12));
    CHECK_THROWS_AS(speedup_ratio(1.0), DomainError);
    CHECK_THROWS_AS(speedup_ratio(0.0), DomainError);
    CHECK_THROWS_AS(speedup_ratio(-8.0), DomainError);
}
