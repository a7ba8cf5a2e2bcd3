#include "curvecross/unzip.hpp"
