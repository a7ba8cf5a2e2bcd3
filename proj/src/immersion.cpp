#include "curvecross/immersion.hpp"
