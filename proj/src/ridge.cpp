#include "ridgecast/ridge.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

#include <Eigen/Cholesky>

#include "ridgecast/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "model-state files are little-endian; big-endian hosts are not supported");

namespace ridgecast {

namespace {

// Model-state file layout (all integers and floats little-endian):
//   magic "PRQR" | version u32 | d u32 | alpha f64 | fit_intercept u8 |
//   count u64 | gram d*d f64 row-major | moment d f64 | sum_x d f64 |
//   sum_y f64 | scaler mean d f64 | scaler stddev d f64 |
//   coefficients d f64 | intercept f64 | crc32 u32 of everything before it.
constexpr std::array<char, 4> kMagic = {'P', 'R', 'Q', 'R'};
constexpr std::uint32_t kVersion = 1;

std::uint32_t crc32(const unsigned char* data, std::size_t size) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int bit = 0; bit < 8; ++bit) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t crc = 0xFFFFFFFFu;
    for (std::size_t i = 0; i < size; ++i) crc = table[(crc ^ data[i]) & 0xFFu] ^ (crc >> 8);
    return crc ^ 0xFFFFFFFFu;
}

class ByteWriter {
public:
    template <typename T>
    void put(const T& value) {
        const auto* p = reinterpret_cast<const unsigned char*>(&value);
        bytes_.insert(bytes_.end(), p, p + sizeof(T));
    }

    void put_doubles(const double* values, std::size_t n) {
        const auto* p = reinterpret_cast<const unsigned char*>(values);
        bytes_.insert(bytes_.end(), p, p + n * sizeof(double));
    }

    std::vector<unsigned char>& bytes() { return bytes_; }

private:
    std::vector<unsigned char> bytes_;
};

class ByteReader {
public:
    ByteReader(const unsigned char* data, std::size_t size) : data_(data), size_(size) {}

    template <typename T>
    T get() {
        T value;
        require(sizeof(T));
        std::memcpy(&value, data_ + pos_, sizeof(T));
        pos_ += sizeof(T);
        return value;
    }

    void get_doubles(double* out, std::size_t n) {
        require(n * sizeof(double));
        std::memcpy(out, data_ + pos_, n * sizeof(double));
        pos_ += n * sizeof(double);
    }

    std::size_t position() const { return pos_; }

private:
    void require(std::size_t n) const {
        if (pos_ + n > size_) {
            throw Error(ErrorCode::CorruptFile, "model-state file is truncated");
        }
    }

    const unsigned char* data_;
    std::size_t size_;
    std::size_t pos_ = 0;
};

} // namespace

RidgeModelState::RidgeModelState(std::size_t dimension, RidgeConfig config) : config_(config) {
    if (dimension == 0) {
        throw Error(ErrorCode::InvalidArgument, "model dimension must be positive");
    }
    if (config_.alpha < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "alpha must be non-negative");
    }
    const auto d = static_cast<Eigen::Index>(dimension);
    stats_.gram.setZero(d, d);
    stats_.moment.setZero(d);
    stats_.sum_x.setZero(d);
    coefficients_.setZero(d);
    scaler_.mean = Eigen::VectorXd::Zero(d);
    scaler_.stddev = Eigen::VectorXd::Ones(d);
}

void RidgeModelState::check_vector(const Eigen::VectorXd& x) const {
    if (x.size() != stats_.gram.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "expected width " + std::to_string(stats_.gram.rows()) +
                                                      ", got " + std::to_string(x.size()));
    }
}

void RidgeModelState::set_scaler(ScalerStats scaler) {
    if (scaler.mean.size() != stats_.gram.rows() || scaler.stddev.size() != stats_.gram.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "scaler width does not match model dimension");
    }
    scaler_ = std::move(scaler);
}

void RidgeModelState::absorb_row(const Eigen::VectorXd& x, double y) {
    check_vector(x);
    if (!x.allFinite() || !std::isfinite(y)) {
        throw Error(ErrorCode::NonFiniteInput, "absorb_row requires finite inputs");
    }
    stats_.gram.noalias() += x * x.transpose();
    stats_.moment += x * y;
    stats_.sum_x += x;
    stats_.sum_y += y;
    stats_.count += 1;

    if (config_.incremental_inverse && inverse_) {
        const auto d = stats_.gram.rows();
        Eigen::VectorXd xt(config_.fit_intercept ? d + 1 : d);
        xt.head(d) = x;
        if (config_.fit_intercept) xt(d) = 1.0;
        const Eigen::VectorXd v = *inverse_ * xt;
        const double denom = 1.0 + xt.dot(v);
        inverse_->noalias() -= (v * v.transpose()) / denom;
        refresh_from_inverse();
    } else {
        dirty_ = true;
    }
}

Eigen::MatrixXd RidgeModelState::augmented_system() const {
    const auto d = stats_.gram.rows();
    if (!config_.fit_intercept) {
        Eigen::MatrixXd a = stats_.gram;
        a.diagonal().array() += config_.alpha;
        return a;
    }
    Eigen::MatrixXd a(d + 1, d + 1);
    a.topLeftCorner(d, d) = stats_.gram;
    a.topLeftCorner(d, d).diagonal().array() += config_.alpha;
    a.topRightCorner(d, 1) = stats_.sum_x;
    a.bottomLeftCorner(1, d) = stats_.sum_x.transpose();
    a(d, d) = static_cast<double>(stats_.count);
    return a;
}

Eigen::VectorXd RidgeModelState::augmented_rhs() const {
    const auto d = stats_.gram.rows();
    if (!config_.fit_intercept) return stats_.moment;
    Eigen::VectorXd b(d + 1);
    b.head(d) = stats_.moment;
    b(d) = stats_.sum_y;
    return b;
}

void RidgeModelState::refresh_from_inverse() {
    const auto d = stats_.gram.rows();
    const Eigen::VectorXd theta = *inverse_ * augmented_rhs();
    coefficients_ = theta.head(d);
    intercept_ = config_.fit_intercept ? theta(d) : 0.0;
    dirty_ = false;
}

void RidgeModelState::solve() {
    if (stats_.count == 0) {
        throw Error(ErrorCode::InsufficientData, "cannot solve a model that has absorbed no rows");
    }
    const double n = static_cast<double>(stats_.count);

    Eigen::MatrixXd system;
    Eigen::VectorXd rhs;
    if (config_.fit_intercept) {
        // Centered statistics make the penalty act on slopes only.
        system = stats_.gram - (stats_.sum_x * stats_.sum_x.transpose()) / n;
        rhs = stats_.moment - stats_.sum_x * (stats_.sum_y / n);
    } else {
        system = stats_.gram;
        rhs = stats_.moment;
    }
    system = ((system + system.transpose()) * 0.5).eval();
    system.diagonal().array() += config_.alpha;

    Eigen::LLT<Eigen::MatrixXd> llt(system);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::SingularSystem,
                    config_.alpha == 0.0
                        ? "centered normal equations are rank-deficient at alpha = 0"
                        : "normal-equation factorization failed");
    }
    coefficients_ = llt.solve(rhs);
    intercept_ = config_.fit_intercept ? (stats_.sum_y - coefficients_.dot(stats_.sum_x)) / n : 0.0;
    dirty_ = false;

    if (config_.incremental_inverse) {
        Eigen::MatrixXd a = augmented_system();
        Eigen::LLT<Eigen::MatrixXd> allt(a);
        if (allt.info() != Eigen::Success) {
            throw Error(ErrorCode::SingularSystem, "augmented normal system is not positive definite");
        }
        inverse_ = allt.solve(Eigen::MatrixXd::Identity(a.rows(), a.cols()));
    } else {
        inverse_.reset();
    }
}

PredictResult RidgeModelState::predict(const Eigen::VectorXd& x) const {
    check_vector(x);
    if (stats_.count == 0) {
        return {config_.fallback, true};
    }
    if (dirty_) {
        throw Error(ErrorCode::StaleModel, "statistics changed since the last solve");
    }
    return {coefficients_.dot(x) + intercept_, false};
}

Eigen::VectorXd RidgeModelState::coefficients_in_input_units() const {
    Eigen::VectorXd raw(coefficients_.size());
    for (Eigen::Index j = 0; j < coefficients_.size(); ++j) {
        raw(j) = scaler_.stddev(j) > 0.0 ? coefficients_(j) / scaler_.stddev(j) : 0.0;
    }
    return raw;
}

double RidgeModelState::intercept_in_input_units() const {
    double b = intercept_;
    for (Eigen::Index j = 0; j < coefficients_.size(); ++j) {
        if (scaler_.stddev(j) > 0.0) b -= coefficients_(j) * scaler_.mean(j) / scaler_.stddev(j);
    }
    return b;
}

void RidgeModelState::save(const std::string& path) const {
    const auto d = stats_.gram.rows();
    ByteWriter w;
    w.bytes().insert(w.bytes().end(), kMagic.begin(), kMagic.end());
    w.put(kVersion);
    w.put(static_cast<std::uint32_t>(d));
    w.put(config_.alpha);
    w.put(static_cast<std::uint8_t>(config_.fit_intercept ? 1 : 0));
    w.put(stats_.count);
    // Eigen is column-major; emit explicit row-major order.
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) w.put(stats_.gram(i, j));
    }
    w.put_doubles(stats_.moment.data(), static_cast<std::size_t>(d));
    w.put_doubles(stats_.sum_x.data(), static_cast<std::size_t>(d));
    w.put(stats_.sum_y);
    w.put_doubles(scaler_.mean.data(), static_cast<std::size_t>(d));
    w.put_doubles(scaler_.stddev.data(), static_cast<std::size_t>(d));
    w.put_doubles(coefficients_.data(), static_cast<std::size_t>(d));
    w.put(intercept_);
    const std::uint32_t crc = crc32(w.bytes().data(), w.bytes().size());
    w.put(crc);

    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) {
        throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
    }
    out.write(reinterpret_cast<const char*>(w.bytes().data()),
              static_cast<std::streamsize>(w.bytes().size()));
    if (!out.good()) {
        throw Error(ErrorCode::IoError, "short write to '" + path + "'");
    }
}

RidgeModelState RidgeModelState::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) {
        throw Error(ErrorCode::FileNotFound, "cannot open '" + path + "'");
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (bytes.size() < 12 || std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0) {
        throw Error(ErrorCode::CorruptFile, "bad magic bytes in '" + path + "'");
    }
    ByteReader r(bytes.data(), bytes.size());
    r.get<std::uint32_t>(); // magic, already checked
    const auto version = r.get<std::uint32_t>();
    if (version != kVersion) {
        throw Error(ErrorCode::VersionUnsupported, "version " + std::to_string(version) +
                                                       " is not supported (expected " +
                                                       std::to_string(kVersion) + ")");
    }
    const auto d32 = r.get<std::uint32_t>();
    const auto d = static_cast<Eigen::Index>(d32);
    // gram d^2, moment/sum_x/mean/stddev/coefficients 5d, sum_y + intercept.
    const std::size_t payload =
        12 + 8 + 1 + 8 +
        sizeof(double) * (static_cast<std::size_t>(d32) * d32 + 5 * static_cast<std::size_t>(d32) + 2);
    if (bytes.size() != payload + 4) {
        throw Error(ErrorCode::CorruptFile, "model-state file is truncated or oversized");
    }
    const std::uint32_t stored_crc = [&] {
        std::uint32_t c;
        std::memcpy(&c, bytes.data() + payload, 4);
        return c;
    }();
    if (crc32(bytes.data(), payload) != stored_crc) {
        throw Error(ErrorCode::CorruptFile, "checksum mismatch in '" + path + "'");
    }

    RidgeConfig config;
    config.alpha = r.get<double>();
    config.fit_intercept = r.get<std::uint8_t>() != 0;
    RidgeModelState state(d32, config);
    state.stats_.count = r.get<std::uint64_t>();
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) state.stats_.gram(i, j) = r.get<double>();
    }
    r.get_doubles(state.stats_.moment.data(), d32);
    r.get_doubles(state.stats_.sum_x.data(), d32);
    state.stats_.sum_y = r.get<double>();
    r.get_doubles(state.scaler_.mean.data(), d32);
    r.get_doubles(state.scaler_.stddev.data(), d32);
    r.get_doubles(state.coefficients_.data(), d32);
    state.intercept_ = r.get<double>();
    state.dirty_ = state.stats_.count > 0;
    return state;
}

RidgeModelState fit_batch(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const RidgeConfig& config) {
    if (X.rows() != y.size()) {
        throw Error(ErrorCode::DimensionMismatch, "design matrix and target length disagree");
    }
    if (X.rows() == 0) {
        throw Error(ErrorCode::InsufficientData, "batch fit needs at least one row");
    }
    if (!X.allFinite() || !y.allFinite()) {
        throw Error(ErrorCode::NonFiniteInput, "batch fit requires finite inputs");
    }
    RidgeModelState state(static_cast<std::size_t>(X.cols()), config);
    state.stats_.gram = X.transpose() * X;
    state.stats_.moment = X.transpose() * y;
    state.stats_.sum_x = X.colwise().sum().transpose();
    state.stats_.sum_y = y.sum();
    state.stats_.count = static_cast<std::uint64_t>(X.rows());
    state.solve();
    return state;
}

} // namespace ridgecast
