#include "heatpoll/names.hpp"

namespace heatpoll {

const std::vector<std::string>& default_name_pool() {
    static const std::vector<std::string> pool = {
        "Ada",     "Adam",    "Adela",   "Ahmet",   "Aisha",   "Alba",    "Alex",
        "Ali",     "Alice",   "Amara",   "Amir",    "Ana",     "Anders",  "Andrea",
        "Anika",   "Anna",    "Anton",   "Aras",    "Ari",     "Arjun",   "Asli",
        "Astrid",  "Aylin",   "Ayse",    "Baran",   "Bartu",   "Basak",   "Bea",
        "Bela",    "Ben",     "Berk",    "Bianca",  "Bilge",   "Bora",    "Boris",
        "Bruno",   "Burak",   "Calvin",  "Camila",  "Can",     "Carla",   "Carlos",
        "Carmen",  "Celine",  "Cem",     "Chen",    "Chiara",  "Clara",   "Dana",
        "Daniel",  "Daria",   "David",   "Defne",   "Demir",   "Deniz",   "Diego",
        "Dilan",   "Dmitri",  "Dora",    "Ebru",    "Eda",     "Ege",     "Ela",
        "Elena",   "Elif",    "Elias",   "Emil",    "Emine",   "Emma",    "Emre",
        "Enzo",    "Erik",    "Esma",    "Esra",    "Ethan",   "Eva",     "Eylul",
        "Farah",   "Fatma",   "Felix",   "Fiona",   "Freya",   "Gabriel", "Gamze",
        "Georg",   "Gianna",  "Gizem",   "Greta",   "Gul",     "Hakan",   "Hana",
        "Hannah",  "Hasan",   "Hazel",   "Helin",   "Henry",   "Hira",    "Hugo",
        "Ibrahim", "Ida",     "Ilya",    "Iris",    "Isaac",   "Ivan",    "Jakob",
        "Jale",    "James",   "Jana",    "Jasper",  "Javier",  "Jin",     "Jonas",
        "Jorge",   "Julia",   "Kaan",    "Kai",     "Karin",   "Kemal",   "Kerem",
        "Kim",     "Kira",    "Lara",    "Lars",    "Laura",   "Leah",    "Leila",
        "Lena",    "Leo",     "Leyla",   "Liam",    "Lina",    "Lisa",    "Liv",
        "Lucas",   "Lucia",   "Luka",    "Maya",    "Mehmet",  "Mei",     "Melis",
        "Merve",   "Mete",    "Mia",     "Milan",   "Mina",    "Mira",    "Murat",
        "Mustafa", "Nadia",   "Naz",     "Nehir",   "Nico",    "Nil",     "Nina",
        "Noah",    "Nora",    "Omar",    "Omer",    "Onur",    "Oscar",   "Ozan",
        "Pablo",   "Pelin",   "Petra",   "Pinar",   "Priya",   "Rana",    "Raul",
        "Ravi",    "Rena",    "Rosa",    "Ruben",   "Ruya",    "Sam",     "Sara",
        "Sedef",   "Selin",   "Sena",    "Serkan",  "Sibel",   "Simge",   "Sofia",
        "Sonia",   "Stefan",  "Su",      "Tamar",   "Tarik",   "Theo",    "Timur",
        "Tolga",   "Tuana",   "Umut",    "Vera",    "Victor",  "Yagmur",  "Yasin",
        "Yasmin",  "Yuki",    "Yusuf",   "Zeynep",
    };
    return pool;
}

} // namespace heatpoll
