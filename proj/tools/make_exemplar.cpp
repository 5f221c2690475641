// Writes the procedural exemplar pair used as the bundled test exemplar.
#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "villus/image.hpp"
#include "villus/phantom.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Write a procedural villous exemplar (image + mask PNG)", "make_exemplar"};
  std::string image = "villi_img.png", mask = "villi_mask.png";
  int size = 256;
  std::uint64_t seed = 1;
  app.add_option("--image", image, "Output image PNG")->capture_default_str();
  app.add_option("--mask", mask, "Output mask PNG")->capture_default_str();
  app.add_option("--size", size, "Side length (px)")->capture_default_str();
  app.add_option("--seed", seed, "Seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    const auto pair = villus::synthetic_exemplar(size, seed);
    villus::save_image(pair.image, image);
    villus::save_mask(pair.mask, mask);
  } catch (const std::exception& e) {
    std::cerr << "make_exemplar: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
