#ifndef SFTLAB_SFTLAB_HPP_
#define SFTLAB_SFTLAB_HPP_

#include "sftlab/actions.hpp"
#include "sftlab/classify.hpp"
#include "sftlab/cohomology.hpp"
#include "sftlab/error.hpp"
#include "sftlab/function.hpp"
#include "sftlab/intlat.hpp"
#include "sftlab/moves.hpp"
#include "sftlab/sft.hpp"
#include "sftlab/textio.hpp"
#include "sftlab/transducer.hpp"

#endif  // SFTLAB_SFTLAB_HPP_
