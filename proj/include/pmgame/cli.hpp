#pragma once

namespace pmg {

int cli_main(int argc, char** argv);

} // namespace pmg
