#pragma once

#include "su2lissajous/errors.hpp"
#include "su2lissajous/io.hpp"
#include "su2lissajous/localization.hpp"
#include "su2lissajous/orbits.hpp"
#include "su2lissajous/oscillator.hpp"
#include "su2lissajous/su2.hpp"
#include "su2lissajous/wavefield.hpp"
