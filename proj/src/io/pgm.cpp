#include "bintomo/io/pgm.hpp"

#include <fstream>
#include <stdexcept>
#include <vector>

namespace bintomo {
namespace {

void write_grid(const std::string& path, int n, int maxval,
                const std::vector<std::uint8_t>& px) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  const bool ascii = n <= 64;
  f << (ascii ? "P2" : "P5") << '\n' << n << ' ' << n << '\n' << maxval << '\n';
  if (ascii) {
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        f << static_cast<int>(px[static_cast<std::size_t>(r) * n + c]);
        f << (c + 1 == n ? '\n' : ' ');
      }
    }
  } else {
    f.write(reinterpret_cast<const char*>(px.data()),
            static_cast<std::streamsize>(px.size()));
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

struct RawPgm {
  int width = 0;
  int height = 0;
  int maxval = 0;
  std::vector<std::uint8_t> px;
};

int next_token(std::istream& in) {
  // skips whitespace and '#' comments
  while (true) {
    int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  int v = -1;
  in >> v;
  return v;
}

RawPgm read_grid(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open image: " + path);
  std::string magic;
  f >> magic;
  if (magic != "P2" && magic != "P5") {
    throw std::runtime_error("unsupported PGM magic in " + path);
  }
  RawPgm img;
  img.width = next_token(f);
  img.height = next_token(f);
  img.maxval = next_token(f);
  if (img.width <= 0 || img.height <= 0 || img.maxval <= 0 ||
      img.maxval > 255) {
    throw std::runtime_error("bad PGM header in " + path);
  }
  const std::size_t count =
      static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  img.px.resize(count);
  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      const int v = next_token(f);
      if (v < 0 || v > img.maxval) {
        throw std::runtime_error("pixel out of range in " + path);
      }
      img.px[i] = static_cast<std::uint8_t>(v);
    }
  } else {
    f.get();  // single whitespace after maxval
    f.read(reinterpret_cast<char*>(img.px.data()),
           static_cast<std::streamsize>(count));
    if (f.gcount() != static_cast<std::streamsize>(count)) {
      throw std::runtime_error("truncated PGM data in " + path);
    }
  }
  return img;
}

}  // namespace

void write_pgm(const BinaryImage& img, const std::string& path) {
  write_grid(path, img.n, 1, img.labels);
}

void write_pgm(const TernaryImage& img, const std::string& path) {
  std::vector<std::uint8_t> px(img.pixels.size());
  for (std::size_t i = 0; i < px.size(); ++i) {
    switch (img.pixels[i]) {
      case Ternary::Low:
        px[i] = 0;
        break;
      case Ternary::Undetermined:
        px[i] = 1;
        break;
      case Ternary::High:
        px[i] = 2;
        break;
    }
  }
  write_grid(path, img.n, 2, px);
}

BinaryImage read_pgm_binary(const std::string& path) {
  RawPgm raw = read_grid(path);
  if (raw.width != raw.height) {
    throw std::runtime_error("expected square image: " + path);
  }
  BinaryImage img;
  img.n = raw.width;
  img.labels.resize(raw.px.size());
  for (std::size_t i = 0; i < raw.px.size(); ++i) {
    if (raw.px[i] > 1) {
      throw std::runtime_error("expected binary image (maxval 1): " + path);
    }
    img.labels[i] = raw.px[i];
  }
  return img;
}

TernaryImage read_pgm_ternary(const std::string& path) {
  RawPgm raw = read_grid(path);
  if (raw.width != raw.height) {
    throw std::runtime_error("expected square image: " + path);
  }
  TernaryImage img;
  img.n = raw.width;
  img.pixels.resize(raw.px.size());
  for (std::size_t i = 0; i < raw.px.size(); ++i) {
    switch (raw.px[i]) {
      case 0:
        img.pixels[i] = Ternary::Low;
        break;
      case 1:
        img.pixels[i] = Ternary::Undetermined;
        break;
      case 2:
        img.pixels[i] = Ternary::High;
        break;
      default:
        throw std::runtime_error("expected ternary image (maxval 2): " + path);
    }
  }
  return img;
}

}  // namespace bintomo
